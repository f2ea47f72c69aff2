"""Exact scalar fields: QQ, GF(p) for odd primes p, and QQ(sqrt(d)).

Elements are immutable and always kept in canonical form, so two equal
elements have identical internal values:

* rationals hold a :class:`fractions.Fraction`;
* prime-field elements hold the least non-negative residue;
* quadratic-extension elements hold a pair ``(a, b)`` of fractions
  standing for ``a + b*sqrt(d)``.

Characteristic 2 is refused when the field is built, never later.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator

from ._parse import ParseError, evaluate


class FieldError(ValueError):
    """Invalid field descriptor, mixed fields, or division by zero."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    q = 2
    while q * q <= n:
        if n % (q * q) == 0:
            return False
        if n % q == 0:
            n //= q
        q += 1
    return True


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Non-negative square root of ``x`` in QQ, or None."""
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    a, b = math.isqrt(num), math.isqrt(den)
    if a * a == num and b * b == den:
        return Fraction(a, b)
    return None


def _sqrt_mod(a: int, p: int) -> int | None:
    """Tonelli-Shanks; returns some root of ``a`` mod odd prime ``p``."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


@dataclass(frozen=True)
class Field:
    """Descriptor of one of the supported fields.

    Use the constructors :data:`QQ`, :func:`GF` and :func:`QSqrt` rather
    than building descriptors by hand.
    """

    kind: str
    p: int | None = None
    d: int | None = None

    def __post_init__(self):
        if self.kind == "q":
            if self.p is not None or self.d is not None:
                raise FieldError("QQ takes no parameters")
        elif self.kind == "gf":
            if not isinstance(self.p, int) or not is_prime(self.p):
                raise FieldError(f"GF(p) needs a prime p, got {self.p!r}")
            if self.p == 2:
                raise FieldError("characteristic 2 is not supported")
        elif self.kind == "qsqrt":
            if not isinstance(self.d, int) or self.d in (0, 1) or not is_squarefree(self.d):
                raise FieldError(f"QQ(sqrt(d)) needs squarefree d not in {{0, 1}}, got {self.d!r}")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "gf" else 0

    @property
    def is_finite(self) -> bool:
        return self.kind == "gf"

    @cached_property
    def zero(self) -> FieldElement:
        return self._make(self._canon(0))

    @cached_property
    def one(self) -> FieldElement:
        return self._make(self._canon(1))

    def _make(self, value) -> FieldElement:
        el = object.__new__(FieldElement)
        _set(el, "field", self)
        _set(el, "value", value)
        return el

    def _canon(self, x):
        """Canonical internal value from an int, Fraction or (a, b) pair."""
        if self.kind == "q":
            if isinstance(x, tuple):
                raise FieldError("pair given for a rational")
            return Fraction(x)
        if self.kind == "gf":
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise FieldError("denominator vanishes mod p")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            if isinstance(x, tuple):
                raise FieldError("pair given for a prime-field element")
            return int(x) % self.p
        if isinstance(x, tuple):
            a, b = x
            return (Fraction(a), Fraction(b))
        return (Fraction(x), Fraction(0))

    def __call__(self, x=0) -> FieldElement:
        """Coerce ``x`` (int, Fraction, pair, text or element) into the field."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldError(f"element of {x.field} used in {self}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool) or not isinstance(x, (int, Fraction, tuple)):
            raise FieldError(f"cannot coerce {x!r} into {self}")
        return self._make(self._canon(x))

    def sqrt_d(self) -> FieldElement:
        if self.kind != "qsqrt":
            raise FieldError(f"{self} has no adjoined square root")
        return self._make((Fraction(0), Fraction(1)))

    def elements(self) -> Iterator[FieldElement]:
        if not self.is_finite:
            raise FieldError(f"{self} is infinite")
        for k in range(self.p):
            yield self._make(k)

    def random_element(self, rng: random.Random, bound: int = 5) -> FieldElement:
        """Uniform over GF(p); small-height values over the infinite fields."""
        if self.kind == "gf":
            return self._make(rng.randrange(self.p))
        if self.kind == "q":
            return self(Fraction(rng.randint(-bound, bound), rng.randint(1, 2)))
        return self((rng.randint(-bound, bound), rng.randint(-bound, bound)))

    def parse(self, text: str) -> FieldElement:
        def sqrt(n: int) -> FieldElement:
            if self.kind == "qsqrt":
                if n == self.d:
                    return self.sqrt_d()
            root = rational_sqrt(Fraction(n))
            if root is not None:
                return self(root)
            if self.kind == "gf":
                ok, w = self(n).is_square()
                if ok:
                    return w
            raise ParseError(f"sqrt({n}) is not in {self}")

        try:
            val = evaluate(text, self, sqrt)
        except (ParseError, FieldError, ZeroDivisionError) as exc:
            raise FieldError(f"cannot parse {text!r} as an element of {self}: {exc}") from None
        return val

    # descriptors in text / JSON form

    @property
    def flag(self) -> str:
        if self.kind == "q":
            return "q"
        if self.kind == "gf":
            return f"gf:{self.p}"
        return f"qsqrt:{self.d}"

    @classmethod
    def from_flag(cls, text: str) -> Field:
        kind, _, param = text.strip().partition(":")
        try:
            if kind == "q" and not param:
                return QQ
            if kind == "gf":
                return GF(int(param))
            if kind == "qsqrt":
                return QSqrt(int(param))
        except ValueError as exc:
            raise FieldError(f"bad field flag {text!r}: {exc}") from None
        raise FieldError(f"bad field flag {text!r}")

    def to_json(self) -> dict:
        if self.kind == "q":
            return {"kind": "q"}
        if self.kind == "gf":
            return {"kind": "gf", "p": self.p}
        return {"kind": "qsqrt", "d": self.d}

    @classmethod
    def from_json(cls, obj: dict) -> Field:
        if not isinstance(obj, dict) or "kind" not in obj:
            raise FieldError(f"bad field descriptor {obj!r}")
        kind = obj["kind"]
        if kind == "q":
            return QQ
        if kind == "gf":
            return GF(obj.get("p"))
        if kind == "qsqrt":
            return QSqrt(obj.get("d"))
        raise FieldError(f"unknown field kind {kind!r}")

    def __str__(self) -> str:
        if self.kind == "q":
            return "QQ"
        if self.kind == "gf":
            return f"GF({self.p})"
        return f"QQ(sqrt({self.d}))"


QQ = Field("q")


def GF(p: int) -> Field:
    return Field("gf", p=p)


def QSqrt(d: int) -> Field:
    return Field("qsqrt", d=d)


def characteristic(field: Field) -> int:
    return field.characteristic


_set = object.__setattr__


def _fmt_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class FieldElement:
    __slots__ = ("field", "value")

    field: Field

    def __init__(self, field: Field, x=0):
        canon = field(x)
        self.field = field
        self.value = canon.value

    def __setattr__(self, name, value):
        if hasattr(self, "value"):
            raise AttributeError("FieldElement is immutable")
        object.__setattr__(self, name, value)

    def _other(self, other) -> FieldElement | None:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldError(f"cannot mix {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        f = self.field
        if f.kind == "gf":
            return f._make((self.value + o.value) % f.p)
        if f.kind == "q":
            return f._make(self.value + o.value)
        a, b = self.value
        c, e = o.value
        return f._make((a + c, b + e))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        if f.kind == "gf":
            return f._make(-self.value % f.p)
        if f.kind == "q":
            return f._make(-self.value)
        a, b = self.value
        return f._make((-a, -b))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        f = self.field
        if f.kind == "gf":
            return f._make(self.value * o.value % f.p)
        if f.kind == "q":
            return f._make(self.value * o.value)
        a, b = self.value
        c, e = o.value
        return f._make((a * c + f.d * b * e, a * e + b * c))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError(f"inverse of zero in {self.field}")
        f = self.field
        if f.kind == "gf":
            return f._make(pow(self.value, -1, f.p))
        if f.kind == "q":
            return f._make(1 / self.value)
        a, b = self.value
        n = a * a - f.d * b * b
        return f._make((a / n, -b / n))

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base, e = self.inverse(), -e
        result = self.field.one
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self.value == self.field(other).value
            except FieldError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field.kind, self.field.p, self.field.d, self.value))

    def is_zero(self) -> bool:
        if self.field.kind == "qsqrt":
            return self.value[0] == 0 and self.value[1] == 0
        return self.value == 0

    def __bool__(self):
        return not self.is_zero()

    def is_one(self) -> bool:
        return self == self.field.one

    def conjugate(self) -> FieldElement:
        """a + b*sqrt(d) -> a - b*sqrt(d)."""
        if self.field.kind != "qsqrt":
            raise FieldError(f"conjugation needs a quadratic extension, not {self.field}")
        a, b = self.value
        return self.field._make((a, -b))

    def norm(self) -> Fraction:
        """Field norm a^2 - d b^2 down to QQ."""
        if self.field.kind != "qsqrt":
            raise FieldError(f"norm needs a quadratic extension, not {self.field}")
        a, b = self.value
        return a * a - self.field.d * b * b

    @property
    def rational_part(self) -> Fraction:
        return self.value[0] if self.field.kind == "qsqrt" else self.value

    def to_rational(self) -> Fraction:
        """The element as a Fraction; only for QQ or the QQ-part of QQ(sqrt d)."""
        if self.field.kind == "q":
            return self.value
        if self.field.kind == "qsqrt" and self.value[1] == 0:
            return self.value[0]
        raise FieldError(f"{self} is not rational")

    def is_square(self) -> tuple[bool, FieldElement | None]:
        """Decide squareness; on success also return the canonical root.

        Root choice: least residue in ``[0, (p-1)/2]`` over GF(p), the
        non-negative root over QQ, and over QQ(sqrt d) the root with
        non-negative rational part (then non-negative sqrt(d) part).
        """
        f = self.field
        if f.kind == "gf":
            r = _sqrt_mod(self.value, f.p)
            if r is None:
                return False, None
            return True, f._make(min(r, f.p - r))
        if f.kind == "q":
            r = rational_sqrt(self.value)
            return (True, f._make(r)) if r is not None else (False, None)
        a, b = self.value
        if b == 0:
            r = rational_sqrt(a)
            if r is not None:
                return True, f._make((r, Fraction(0)))
            r = rational_sqrt(a / f.d)
            if r is not None:
                return True, f._make((Fraction(0), r))
            return False, None
        e = rational_sqrt(a * a - f.d * b * b)
        if e is None:
            return False, None
        for half in ((a + e) / 2, (a - e) / 2):
            u = rational_sqrt(half)
            if u:
                return True, f._make((u, b / (2 * u)))
        return False, None

    def sort_key(self):
        return self.value if self.field.kind != "q" else (self.value,)

    def __str__(self) -> str:
        f = self.field
        if f.kind == "gf":
            return str(self.value)
        if f.kind == "q":
            return _fmt_fraction(self.value)
        a, b = self.value
        if b == 0:
            return _fmt_fraction(a)
        root = f"sqrt({f.d})"
        if b == 1:
            irr = root
        elif b == -1:
            irr = "-" + root
        else:
            irr = f"{_fmt_fraction(b)}*{root}"
        if a == 0:
            return irr
        return f"{_fmt_fraction(a)}{'' if irr.startswith('-') else '+'}{irr}"

    def __repr__(self) -> str:
        return f"{self.field}({self})"

    def is_compound(self) -> bool:
        """True when the text form needs parentheses inside a product."""
        return self.field.kind == "qsqrt" and self.value[0] != 0 and self.value[1] != 0
