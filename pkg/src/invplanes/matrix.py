"""Dense exact matrices over a :class:`~invplanes.field.Field`.

Vectors are plain tuples of field elements. Row reduction pivots on the
first nonzero entry, which is all that matters in exact arithmetic and
makes kernels canonical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from ._berkowitz import berkowitz
from .field import Field, FieldElement, FieldError
from .poly import Poly, quadratic_irreducible

Vector = tuple  # tuple[FieldElement, ...]


class ShapeError(ValueError):
    pass


class Matrix:
    __slots__ = ("field", "rows")

    def __init__(self, field: Field, rows: Sequence[Sequence]):
        rows = tuple(tuple(field(x) for x in row) for row in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ShapeError("ragged rows")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def _raw(cls, field, rows) -> Matrix:
        m = object.__new__(cls)
        object.__setattr__(m, "field", field)
        object.__setattr__(m, "rows", tuple(tuple(r) for r in rows))
        return m

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        z, o = field.zero, field.one
        return cls._raw(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: Field, r: int, c: int | None = None) -> Matrix:
        c = r if c is None else c
        return cls._raw(field, [[field.zero] * c for _ in range(r)])

    @classmethod
    def diag(cls, field: Field, entries) -> Matrix:
        entries = [field(e) for e in entries]
        n = len(entries)
        return cls._raw(field, [[entries[i] if i == j else field.zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, field: Field, cols) -> Matrix:
        cols = [tuple(field(x) for x in c) for c in cols]
        return cls._raw(field, list(zip(*cols)))

    @classmethod
    def block_diag(cls, *blocks: Matrix) -> Matrix:
        field = blocks[0].field
        n = sum(b.ncols for b in blocks)
        rows = []
        offset = 0
        for b in blocks:
            for r in b.rows:
                rows.append([field.zero] * offset + list(r) + [field.zero] * (n - offset - b.ncols))
            offset += b.ncols
        return cls._raw(field, rows)

    @classmethod
    def random(cls, field: Field, r: int, c: int, rng: random.Random) -> Matrix:
        return cls._raw(field, [[field.random_element(rng) for _ in range(c)] for _ in range(r)])

    @classmethod
    def companion(cls, f: Poly) -> Matrix:
        """Companion matrix of monic ``f``: subdiagonal ones, last column ``-coeffs``."""
        f = f.monic()
        n = f.degree
        field = f.field
        rows = [[field.zero] * n for _ in range(n)]
        for i in range(1, n):
            rows[i][i - 1] = field.one
        for i in range(n):
            rows[i][n - 1] = -f.coeffs[i]
        return cls._raw(field, rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def _check(self, other: Matrix, same_shape=True):
        if other.field != self.field:
            raise FieldError(f"cannot mix matrices over {self.field} and {other.field}")
        if same_shape and self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        return Matrix._raw(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        return Matrix._raw(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> Matrix:
        return Matrix._raw(self.field, [[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check(other, same_shape=False)
            if self.ncols != other.nrows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other.rows))
            zero = self.field.zero
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = zero
                    for a, b in zip(r, c):
                        acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return Matrix._raw(self.field, out)
        c = self.field(other)
        return Matrix._raw(self.field, [[a * c for a in r] for r in self.rows])

    def __rmul__(self, other):
        return self * other

    def __pow__(self, e: int) -> Matrix:
        if not self.is_square() or e < 0:
            raise ShapeError("power needs a square matrix and e >= 0")
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def apply(self, v: Sequence) -> Vector:
        """Matrix-vector product."""
        if len(v) != self.ncols:
            raise ShapeError(f"vector of length {len(v)} for a {self.shape} matrix")
        zero = self.field.zero
        out = []
        for r in self.rows:
            acc = zero
            for a, b in zip(r, v):
                acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def transpose(self) -> Matrix:
        return Matrix._raw(self.field, list(zip(*self.rows)) if self.rows else [])

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def rref(self) -> tuple[Matrix, list[int]]:
        """Reduced row echelon form and the pivot columns."""
        rows = [list(r) for r in self.rows]
        pivots = []
        lead = 0
        for c in range(self.ncols):
            pr = next((i for i in range(lead, len(rows)) if not rows[i][c].is_zero()), None)
            if pr is None:
                continue
            rows[lead], rows[pr] = rows[pr], rows[lead]
            inv = rows[lead][c].inverse()
            rows[lead] = [x * inv for x in rows[lead]]
            for i in range(len(rows)):
                if i != lead and not rows[i][c].is_zero():
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[lead])]
            pivots.append(c)
            lead += 1
            if lead == len(rows):
                break
        return Matrix._raw(self.field, rows), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> list[Vector]:
        """Canonical nullspace basis: one vector per free column, ascending.

        Each vector has a 1 in its free column, zeros in the other free
        columns, and pivot entries read off the reduced echelon form.
        """
        R, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for f in free:
            v = [self.field.zero] * self.ncols
            v[f] = self.field.one
            for i, pc in enumerate(pivots):
                v[pc] = -R[i, f]
            basis.append(tuple(v))
        return basis

    def det(self) -> FieldElement:
        if not self.is_square():
            raise ShapeError(f"determinant of a non-square {self.shape} matrix")
        rows = [list(r) for r in self.rows]
        n = len(rows)
        result = self.field.one
        for c in range(n):
            pr = next((i for i in range(c, n) if not rows[i][c].is_zero()), None)
            if pr is None:
                return self.field.zero
            if pr != c:
                rows[c], rows[pr] = rows[pr], rows[c]
                result = -result
            piv = rows[c][c]
            result = result * piv
            inv = piv.inverse()
            for i in range(c + 1, n):
                if not rows[i][c].is_zero():
                    f = rows[i][c] * inv
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
        return result

    def charpoly(self) -> Poly:
        """det(T*I - A), by Berkowitz's division-free recurrence."""
        if not self.is_square():
            raise ShapeError(f"characteristic polynomial of a non-square {self.shape} matrix")
        coeffs = berkowitz([list(r) for r in self.rows], self.field.zero, self.field.one)
        return Poly._raw(self.field, coeffs[::-1])

    def trace(self) -> FieldElement:
        acc = self.field.zero
        for i in range(min(self.shape)):
            acc = acc + self.rows[i][i]
        return acc

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "rows": [[str(x) for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, obj: dict, field: Field | None = None) -> Matrix:
        """Read ``{"field": ..., "rows": [...]}``; ``field`` overrides the embedded descriptor."""
        if field is None:
            if "field" not in obj:
                raise FieldError("matrix JSON has no field descriptor")
            field = Field.from_json(obj["field"])
        rows = obj.get("rows")
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ShapeError("matrix JSON needs a list of rows")
        return cls(field, [[str(x) if not isinstance(x, str) else x for x in r] for r in rows])

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "]"

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self})"


def vector(field: Field, entries) -> Vector:
    return tuple(field(x) for x in entries)


def unit_vector(field: Field, n: int, i: int) -> Vector:
    return tuple(field.one if j == i else field.zero for j in range(n))


def vec_add(u, v) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u) -> Vector:
    return tuple(c * a for a in u)


def is_zero_vector(u) -> bool:
    return all(a.is_zero() for a in u)


def rank_of_vectors(field: Field, vectors) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    return Matrix._raw(field, vectors).rank()


def in_span(field: Field, basis, w) -> bool:
    return rank_of_vectors(field, list(basis) + [tuple(w)]) == rank_of_vectors(field, basis)


def eval_poly(f: Poly, A: Matrix) -> Matrix:
    """f(A) by Horner's rule."""
    if f.field != A.field:
        raise FieldError(f"polynomial over {f.field} evaluated at a matrix over {A.field}")
    if not A.is_square():
        raise ShapeError("eval_poly needs a square matrix")
    n = A.nrows
    acc = Matrix.zeros(A.field, n)
    eye = Matrix.identity(A.field, n)
    for c in reversed(f.coeffs):
        acc = acc * A + eye * c
    return acc


@dataclass(frozen=True)
class SimilarityClass:
    """Complete similarity invariant of a 2x2 matrix in characteristic != 2.

    ``tag`` is ``scalar``, ``jordan`` (nonscalar, repeated eigenvalue),
    ``split`` (two distinct eigenvalues in the field) or ``irreducible``.
    """

    trace: FieldElement
    det: FieldElement
    tag: str

    def to_json(self) -> dict:
        return {"trace": str(self.trace), "det": str(self.det), "tag": self.tag}

    def charpoly(self) -> Poly:
        field = self.trace.field
        return Poly._raw(field, (self.det, -self.trace, field.one))


def similarity_class(L: Matrix) -> SimilarityClass:
    if L.shape != (2, 2):
        raise ShapeError(f"similarity_class needs a 2x2 matrix, got {L.shape}")
    (p, q), (r, s) = L.rows
    t = p + s
    d = p * s - q * r
    disc = t * t - 4 * d
    if disc.is_zero():
        tag = "scalar" if q.is_zero() and r.is_zero() and p == s else "jordan"
    elif quadratic_irreducible(Poly._raw(L.field, (d, -t, L.field.one))):
        tag = "irreducible"
    else:
        tag = "split"
    return SimilarityClass(t, d, tag)
