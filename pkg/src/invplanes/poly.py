"""Univariate polynomials over the exact fields, and their factorization.

Factorization strategy per field:

* GF(p): squarefree decomposition, distinct-degree split, then
  Cantor-Zassenhaus equal-degree split driven by an explicit seed;
* QQ: clear denominators and factor the primitive integer polynomial
  (rational roots, then Zassenhaus);
* QQ(sqrt d): Trager's norm method on top of the QQ factorizer.

:class:`BivarPoly` holds the two-variable determinant
``F(t, d) = det(A^2 - t A + d I)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import _modp, _zfactor
from ._berkowitz import berkowitz
from ._parse import ParseError, evaluate
from .field import Field, FieldElement, FieldError

VARIABLE_NAMES = ("T", "t", "x", "X")


class Poly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``T**i``."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def _raw(cls, field, coeffs) -> Poly:
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        p = object.__new__(cls)
        object.__setattr__(p, "field", field)
        object.__setattr__(p, "coeffs", tuple(cs))
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def T(cls, field: Field) -> Poly:
        return cls._raw(field, (field.zero, field.one))

    @classmethod
    def constant(cls, field: Field, c) -> Poly:
        return cls._raw(field, (field(c),))

    @classmethod
    def monomial(cls, field: Field, k: int, c=1) -> Poly:
        return cls._raw(field, [field.zero] * k + [field(c)])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> FieldElement:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coefficient(self, k: int) -> FieldElement:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def _lift(self, other) -> Poly | None:
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldError(f"cannot mix polynomials over {self.field} and {other.field}")
            return other
        if isinstance(other, (FieldElement, int, Fraction)) and not isinstance(other, bool):
            return Poly._raw(self.field, (self.field(other),))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Poly._raw(self.field, ())
        zero = self.field.zero
        out = [zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly._raw(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = Poly._raw(self.field, (self.field.one,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dg = o.degree
        if len(r) - 1 < dg:
            return Poly._raw(self.field, ()), self
        inv = o.lc.inverse()
        q = [self.field.zero] * (len(r) - dg)
        while len(r) - 1 >= dg:
            shift = len(r) - 1 - dg
            c = r[-1] * inv
            q[shift] = c
            for i, b in enumerate(o.coeffs):
                r[i + shift] = r[i + shift] - c * b
            r.pop()
            while r and r[-1].is_zero():
                r.pop()
        return Poly._raw(self.field, q), Poly._raw(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        """Division by a nonzero constant only."""
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.degree != 0:
            raise ZeroDivisionError("can only divide a polynomial by a nonzero constant")
        inv = o.coeffs[0].inverse()
        return Poly._raw(self.field, [c * inv for c in self.coeffs])

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        inv = self.lc.inverse()
        return Poly._raw(self.field, [c * inv for c in self.coeffs])

    def derivative(self) -> Poly:
        return Poly._raw(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation at a field element (or anything closed under + and *)."""
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, g: Poly) -> Poly:
        acc = Poly._raw(self.field, ())
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def conjugate(self) -> Poly:
        return Poly._raw(self.field, [c.conjugate() for c in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        o = self._lift(other) if isinstance(other, (FieldElement, int, Fraction)) else None
        return o is not None and self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def sort_key(self):
        return (self.degree, tuple(c.sort_key() for c in self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mono = "T" if k == 1 else f"T^{k}"
            if k == 0:
                body = str(c)
            elif c.is_one():
                body = mono
            elif (-c).is_one() and not c.field.is_finite:
                body = "-" + mono
            else:
                cs = f"({c})" if c.is_compound() else str(c)
                body = f"{cs}*{mono}"
            if parts and not body.startswith("-"):
                body = "+" + body
            parts.append(body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self.field}, {self})"

    @classmethod
    def parse(cls, field: Field, text: str) -> Poly:
        def integer(n):
            return cls.constant(field, n)

        def sqrt(n):
            return cls.constant(field, field.parse(f"sqrt({n})"))

        def variable(name):
            if name not in VARIABLE_NAMES:
                raise ParseError(f"unknown variable {name!r}")
            return cls.T(field)

        try:
            return evaluate(text, integer, sqrt, variable)
        except (ParseError, FieldError, ZeroDivisionError) as exc:
            raise FieldError(f"cannot parse {text!r} as a polynomial over {field}: {exc}") from None


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd (zero only if both inputs are zero)."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree parts ``g_i`` with ``f = lc * prod g_i**i``."""
    if f.degree < 1:
        return []
    field = f.field
    if field.is_finite:
        return [
            (_from_ints(field, g), e) for g, e in _modp.squarefree_decomposition(_to_ints(f), field.p)
        ]
    out = []
    df = f.derivative()
    a = gcd(f, df)
    b = f // a
    c = df // a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def squarefree_part(f: Poly) -> Poly:
    out = Poly.constant(f.field, 1)
    for g, _ in squarefree_decomposition(f):
        out = out * g
    return out


@dataclass(frozen=True)
class FactorRecord:
    factor: Poly
    multiplicity: int

    def to_json(self) -> dict:
        return {"factor": str(self.factor), "multiplicity": self.multiplicity}


def _to_ints(f: Poly) -> list[int]:
    return [c.value for c in f.coeffs]


def _from_ints(field: Field, cs) -> Poly:
    return Poly._raw(field, [field._make(c % field.p) for c in cs])


def _rational_to_int_poly(f: Poly) -> list[int]:
    return _zfactor._to_primitive_int([c.to_rational() for c in f.coeffs])


def _int_to_monic(field: Field, cs) -> Poly:
    return Poly(field, [Fraction(c, cs[-1]) for c in cs])


def factor(f: Poly, seed: int = 0) -> list[FactorRecord]:
    """Factor ``f`` into monic irreducibles with multiplicities.

    ``f == f.lc * prod(r.factor ** r.multiplicity)``. Records are sorted by
    degree, then coefficients. Constants give an empty list; the zero
    polynomial is rejected. ``seed`` drives the randomized GF(p) splitter.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if f.degree == 0:
        return []
    field = f.field
    rng = random.Random(seed)
    if field.kind == "gf":
        recs = [FactorRecord(_from_ints(field, g), e) for g, e in _modp.factor(_to_ints(f), field.p, rng)]
    elif field.kind == "q":
        recs = [
            FactorRecord(_int_to_monic(field, g), e)
            for g, e in _zfactor.factor_primitive(_rational_to_int_poly(f), rng)
        ]
    else:
        recs = []
        for g, e in squarefree_decomposition(f):
            recs.extend(FactorRecord(h, e) for h in _trager(g, rng))
    return _merge_sorted(recs)


def _merge_sorted(recs: list[FactorRecord]) -> list[FactorRecord]:
    merged: dict[Poly, int] = {}
    for r in recs:
        merged[r.factor] = merged.get(r.factor, 0) + r.multiplicity
    return sorted((FactorRecord(g, e) for g, e in merged.items()), key=lambda r: r.factor.sort_key())


def _shifts():
    yield 0
    for s in itertools.count(1):
        yield s
        yield -s


def _trager(g: Poly, rng: random.Random) -> list[Poly]:
    """Irreducible factors of monic squarefree ``g`` over QQ(sqrt d)."""
    if g.degree <= 1:
        return [g]
    field = g.field
    T = Poly.T(field)
    root = field.sqrt_d()
    for s in _shifts():
        shifted = g.compose(T - root * s) if s else g
        norm = shifted * shifted.conjugate()
        norm_q = _rational_to_int_poly(norm)
        if len(_zfactor.zgcd(norm_q, _zfactor.derivative(norm_q))) == 1:
            break
    parts = _zfactor.zassenhaus(norm_q, rng)
    if len(parts) == 1:
        return [g]
    out = []
    back = T + root * s
    for part in parts:
        h = gcd(shifted, Poly(field, part))
        if h.degree > 0:
            out.append(h.compose(back).monic() if s else h)
    return out


def multiply_out(field: Field, lc, records) -> Poly:
    out = Poly.constant(field, lc)
    for r in records:
        out = out * r.factor**r.multiplicity
    return out


def discriminant2(g: Poly) -> FieldElement:
    """b^2 - 4ac of a quadratic."""
    if g.degree != 2:
        raise ValueError(f"expected a quadratic, got degree {g.degree}")
    c, b, a = g.coeffs
    return b * b - 4 * a * c


def quadratic_irreducible(g: Poly) -> bool:
    """A quadratic is irreducible iff its discriminant is a non-square (char != 2)."""
    return not discriminant2(g).is_square()[0]


class BivarPoly:
    """Polynomial in ``t`` and ``d``; ``terms[(i, j)]`` multiplies ``t**i * d**j``."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms=None):
        self.field = field
        self.terms = {k: field(v) for k, v in (terms or {}).items() if not field(v).is_zero()}

    @classmethod
    def _raw(cls, field, terms):
        b = object.__new__(cls)
        b.field = field
        b.terms = {k: v for k, v in terms.items() if not v.is_zero()}
        return b

    @classmethod
    def t(cls, field):
        return cls._raw(field, {(1, 0): field.one})

    @classmethod
    def d(cls, field):
        return cls._raw(field, {(0, 1): field.one})

    @classmethod
    def constant(cls, field, c):
        return cls._raw(field, {(0, 0): field(c)})

    def _lift(self, other):
        if isinstance(other, BivarPoly):
            return other
        return BivarPoly.constant(self.field, other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out[k] + v if k in out else v
        return BivarPoly._raw(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly._raw(self.field, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        out: dict = {}
        for (i, j), a in self.terms.items():
            for (k, m), b in o.terms.items():
                key = (i + k, j + m)
                out[key] = out[key] + a * b if key in out else a * b
        return BivarPoly._raw(self.field, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BivarPoly):
            other = self._lift(other)
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __call__(self, t, d) -> FieldElement:
        t, d = self.field(t), self.field(d)
        acc = self.field.zero
        for (i, j), c in self.terms.items():
            acc = acc + c * t**i * d**j
        return acc

    def degree_in(self, var: str) -> int:
        idx = 0 if var == "t" else 1
        return max((k[idx] for k in self.terms), default=-1)

    def grid(self) -> list[list[FieldElement]]:
        """``grid[i][j]`` is the coefficient of ``t**i * d**j``; trailing zeros stripped."""
        if not self.terms:
            return []
        nt, nd = self.degree_in("t") + 1, self.degree_in("d") + 1
        return [[self.terms.get((i, j), self.field.zero) for j in range(nd)] for i in range(nt)]

    def to_json(self) -> dict:
        return {"vars": ["t", "d"], "coeffs": [[str(c) for c in row] for row in self.grid()]}

    @classmethod
    def from_json(cls, field: Field, obj: dict) -> BivarPoly:
        if obj.get("vars") != ["t", "d"]:
            raise FieldError(f"expected vars ['t', 'd'], got {obj.get('vars')!r}")
        terms = {}
        for i, row in enumerate(obj["coeffs"]):
            for j, c in enumerate(row):
                terms[(i, j)] = field(str(c))
        return cls(field, terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
            c = self.terms[(i, j)]
            mono = "*".join(
                s for s in (
                    "" if i == 0 else ("t" if i == 1 else f"t^{i}"),
                    "" if j == 0 else ("d" if j == 1 else f"d^{j}"),
                ) if s
            )
            if not mono:
                body = str(c)
            elif c.is_one():
                body = mono
            elif (-c).is_one() and not c.field.is_finite:
                body = "-" + mono
            else:
                cs = f"({c})" if c.is_compound() else str(c)
                body = f"{cs}*{mono}"
            if parts and not body.startswith("-"):
                body = "+" + body
            parts.append(body)
        return "".join(parts)

    def __repr__(self):
        return f"BivarPoly({self.field}, {self})"


def super_char_poly(A) -> BivarPoly:
    """``F(t, d) = det(A^2 - t*A + d*I)``, computed division-free.

    Substituting ``t = p + s`` and ``d = p*s - q*r`` gives
    ``det((A - pI)(A - sI) - qrI)`` for ``Lambda = [[p, q], [r, s]]``.
    """
    if A.nrows != A.ncols:
        raise ValueError(f"super_char_poly needs a square matrix, got {A.nrows}x{A.ncols}")
    field = A.field
    n = A.nrows
    A2 = A * A
    t, d = BivarPoly.t(field), BivarPoly.d(field)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            e = BivarPoly.constant(field, A2[i, j]) - t * A[i, j]
            if i == j:
                e = e + d
            row.append(e)
        rows.append(row)
    zero, one = BivarPoly.constant(field, 0), BivarPoly.constant(field, 1)
    coeffs = berkowitz(rows, zero, one)
    return coeffs[n] if n % 2 == 0 else -coeffs[n]
