"""The module U = F^n + F^n over R = Mat_2(F).

R acts on pairs by ``[[p, q], [r, s]] . [u; v] = [pu + qv; ru + sv]`` and a
matrix A acts by ``f_A([u; v]) = [Au; Av]``. For n = 2k, U is free of
rank k on ``T_i = [e_i; e_{k+i}]`` and ``A~`` is the k x k matrix over R of
f_A in that basis. ``alpha`` drops the inner brackets of a k x k matrix
over R to give an n x n matrix over F, and ``hat(A) = alpha(A~)``.

Indices in messages are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import Field, FieldElement
from .matrix import Matrix, ShapeError, Vector, unit_vector, vec_add, vec_scale
from .supereig import SuperEigenvalue


@dataclass(frozen=True)
class ModulePair:
    """The element [u; v] of U."""

    u: Vector
    v: Vector

    def __post_init__(self):
        if len(self.u) != len(self.v):
            raise ShapeError(f"halves of lengths {len(self.u)} and {len(self.v)}")

    @property
    def n(self) -> int:
        return len(self.u)

    def __add__(self, other: ModulePair) -> ModulePair:
        return ModulePair(vec_add(self.u, other.u), vec_add(self.v, other.v))

    def flat(self) -> Vector:
        return tuple(self.u) + tuple(self.v)

    @classmethod
    def from_flat(cls, w) -> ModulePair:
        n = len(w) // 2
        return cls(tuple(w[:n]), tuple(w[n:]))

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.flat())

    def is_regular(self) -> bool:
        """u and v linearly independent."""
        n = self.n
        return any(
            not (self.u[i] * self.v[j] - self.u[j] * self.v[i]).is_zero()
            for i in range(n)
            for j in range(i + 1, n)
        )

    def to_json(self) -> dict:
        return {"u": [str(x) for x in self.u], "v": [str(x) for x in self.v]}


def r_action(L: SuperEigenvalue, w: ModulePair) -> ModulePair:
    return ModulePair(
        vec_add(vec_scale(L.p, w.u), vec_scale(L.q, w.v)),
        vec_add(vec_scale(L.r, w.u), vec_scale(L.s, w.v)),
    )


def f_apply(A: Matrix, w: ModulePair) -> ModulePair:
    if A.ncols != w.n:
        raise ShapeError(f"{A.nrows}x{A.ncols} matrix applied to a pair over F^{w.n}")
    return ModulePair(A.apply(w.u), A.apply(w.v))


class RMat:
    """k x k matrix whose entries are 2x2 matrices over the field."""

    __slots__ = ("field", "blocks")

    def __init__(self, field: Field, blocks):
        blocks = tuple(tuple(b if isinstance(b, Matrix) else Matrix(field, b) for b in row) for row in blocks)
        k = len(blocks)
        for row in blocks:
            if len(row) != k:
                raise ShapeError("RMat must be square")
            for b in row:
                if b.shape != (2, 2) or b.field != field:
                    raise ShapeError("RMat entries must be 2x2 over the same field")
        self.field = field
        self.blocks = blocks

    @property
    def k(self) -> int:
        return len(self.blocks)

    def __getitem__(self, ij) -> Matrix:
        i, j = ij
        return self.blocks[i][j]

    def __mul__(self, other: RMat) -> RMat:
        if other.k != self.k:
            raise ShapeError(f"cannot multiply RMat of size {self.k} by size {other.k}")
        zero = Matrix.zeros(self.field, 2)
        out = []
        for i in range(self.k):
            row = []
            for j in range(self.k):
                acc = zero
                for m in range(self.k):
                    acc = acc + self.blocks[i][m] * other.blocks[m][j]
                row.append(acc)
            out.append(row)
        return RMat(self.field, out)

    def __eq__(self, other):
        return isinstance(other, RMat) and self.field == other.field and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "k": self.k,
            "blocks": [[[[str(x) for x in r] for r in b.rows] for b in row] for row in self.blocks],
        }

    @classmethod
    def from_json(cls, obj: dict, field: Field | None = None) -> RMat:
        field = field or Field.from_json(obj["field"])
        blocks = obj["blocks"]
        if len(blocks) != obj.get("k", len(blocks)):
            raise ShapeError("RMat JSON: k does not match the block grid")
        return cls(field, [[[[field(str(x)) for x in r] for r in b] for b in row] for row in blocks])

    def __repr__(self):
        return f"RMat({self.field}, k={self.k})"


def _half(n: int, what: str) -> int:
    if n % 2:
        raise ShapeError(f"{what} needs an even dimension, got n = {n}")
    return n // 2


def tilde(A: Matrix) -> RMat:
    """Block (i, j) is [[a(i,j), a(k+i,j)], [a(i,k+j), a(k+i,k+j)]] (1-based)."""
    if not A.is_square():
        raise ShapeError("tilde needs a square matrix")
    k = _half(A.nrows, "tilde")
    return RMat(
        A.field,
        [
            [
                Matrix._raw(A.field, [[A[i, j], A[k + i, j]], [A[i, k + j], A[k + i, k + j]]])
                for j in range(k)
            ]
            for i in range(k)
        ],
    )


def untilde(M: RMat) -> Matrix:
    k = M.k
    n = 2 * k
    rows = [[None] * n for _ in range(n)]
    for i in range(k):
        for j in range(k):
            (a, b), (c, d) = M[i, j].rows
            rows[i][j] = a
            rows[k + i][j] = b
            rows[i][k + j] = c
            rows[k + i][k + j] = d
    return Matrix._raw(M.field, rows)


def alpha(M: RMat) -> Matrix:
    """Remove the inner brackets: block (I, J) entry (a, b) lands at row 2I+a, column 2J+b."""
    n = 2 * M.k
    rows = [[None] * n for _ in range(n)]
    for I in range(M.k):
        for J in range(M.k):
            for a in range(2):
                for b in range(2):
                    rows[2 * I + a][2 * J + b] = M[I, J][a, b]
    return Matrix._raw(M.field, rows)


def alpha_inv(B: Matrix) -> RMat:
    if not B.is_square():
        raise ShapeError("alpha_inv needs a square matrix")
    k = _half(B.nrows, "alpha_inv")
    return RMat(
        B.field,
        [
            [
                Matrix._raw(B.field, [[B[2 * I, 2 * J], B[2 * I, 2 * J + 1]], [B[2 * I + 1, 2 * J], B[2 * I + 1, 2 * J + 1]]])
                for J in range(k)
            ]
            for I in range(k)
        ],
    )


def hat(A: Matrix) -> Matrix:
    return alpha(tilde(A))


def x_matrix(A: Matrix) -> Matrix:
    """Matrix of f_A on U in the F-basis E_1..E_n, F_1..F_n: diag(A, A)."""
    if not A.is_square():
        raise ShapeError("x_matrix needs a square matrix")
    _half(A.nrows, "x_matrix")
    return Matrix.block_diag(A, A)


@dataclass(frozen=True)
class RModuleBasis:
    """R-basis T_1..T_k of U and its F-basis E_1..E_n, F_1..F_n."""

    field: Field
    n: int
    T: tuple
    X: tuple

    @property
    def k(self) -> int:
        return self.n // 2

    def coordinates(self, w: ModulePair) -> list[SuperEigenvalue]:
        """Coefficients Lambda_i in R with w = sum_i Lambda_i . T_i."""
        k = self.k
        return [SuperEigenvalue(w.u[i], w.u[k + i], w.v[i], w.v[k + i]) for i in range(k)]

    def combine(self, coeffs) -> ModulePair:
        zero = tuple(self.field.zero for _ in range(self.n))
        acc = ModulePair(zero, zero)
        for L, t in zip(coeffs, self.T):
            acc = acc + r_action(L, t)
        return acc


def r_basis(field: Field, n: int) -> RModuleBasis:
    k = _half(n, "r_basis")
    zero = tuple(field.zero for _ in range(n))
    T = tuple(ModulePair(unit_vector(field, n, i), unit_vector(field, n, k + i)) for i in range(k))
    X = tuple(ModulePair(unit_vector(field, n, i), zero) for i in range(n)) + tuple(
        ModulePair(zero, unit_vector(field, n, i)) for i in range(n)
    )
    return RModuleBasis(field, n, T, X)


@dataclass(frozen=True)
class REigenSolution:
    """All w with f_A(w) = Lambda . w, and whether one has u, v independent."""

    basis: list
    regular: bool
    witness: ModulePair | None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def irregular_only(self) -> bool:
        return bool(self.basis) and not self.regular


def eigen_system(A: Matrix, L: SuperEigenvalue) -> Matrix:
    """[[A - pI, -qI], [-rI, A - sI]] acting on the flattened pair [u; v]."""
    n = A.nrows
    eye = Matrix.identity(A.field, n)
    top = [list(r1) + list(r2) for r1, r2 in zip((A - eye * L.p).rows, (eye * -L.q).rows)]
    bottom = [list(r1) + list(r2) for r1, r2 in zip((eye * -L.r).rows, (A - eye * L.s).rows)]
    return Matrix._raw(A.field, top + bottom)


def _regular_witness(basis: list[ModulePair]) -> ModulePair | None:
    # Each minor u_i v_j - u_j v_i is a quadratic form on the solution space.
    # A quadratic form vanishing at every e_a and e_a + e_b is identically
    # zero, so checking those points decides whether a regular element exists.
    candidates = list(basis)
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            candidates.append(basis[a] + basis[b])
    for w in candidates:
        if w.is_regular():
            return w
    return None


def r_eigen_solve(A: Matrix, L: SuperEigenvalue) -> REigenSolution:
    if not A.is_square():
        raise ShapeError("r_eigen_solve needs a square matrix")
    basis = [ModulePair.from_flat(w) for w in eigen_system(A, L).kernel_basis()]
    witness = _regular_witness(basis)
    return REigenSolution(basis, witness is not None, witness)


def lambda_block_diag(L: SuperEigenvalue, k: int) -> Matrix:
    return Matrix.block_diag(*([L.matrix()] * k))


def det_test(A: Matrix, L: SuperEigenvalue) -> FieldElement:
    """det(hat(A) - diag(Lambda, ..., Lambda))."""
    H = hat(A)
    return (H - lambda_block_diag(L, H.nrows // 2)).det()
