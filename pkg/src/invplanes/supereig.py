"""Super-eigenvalues and super-eigenvectors (invariant planes) of a matrix.

A plane ``W = span(u, v)`` is invariant under ``A`` when

    A u = p u + q v,    A v = r u + s v,

and ``Lambda = [[p, q], [r, s]]`` is then a super-eigenvalue. It is
proper when ``W`` holds no eigenvector of ``A``. In characteristic != 2,
``Lambda`` is proper exactly when ``det(p_Lambda(A)) = 0`` and
``p_Lambda(T) = T^2 - tr(Lambda) T + det(Lambda)`` is irreducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import Field, FieldElement
from .matrix import (
    Matrix,
    ShapeError,
    SimilarityClass,
    Vector,
    eval_poly,
    rank_of_vectors,
    similarity_class,
    vec_scale,
    vec_sub,
)
from .poly import FactorRecord, Poly, factor, quadratic_irreducible


class ImproperError(ValueError):
    """Raised when a construction needs a proper super-eigenvalue."""


@dataclass(frozen=True)
class SuperEigenvalue:
    p: FieldElement
    q: FieldElement
    r: FieldElement
    s: FieldElement

    @classmethod
    def from_rows(cls, field: Field, rows) -> SuperEigenvalue:
        (p, q), (r, s) = rows
        return cls(field(p), field(q), field(r), field(s))

    @classmethod
    def from_matrix(cls, L: Matrix) -> SuperEigenvalue:
        if L.shape != (2, 2):
            raise ShapeError(f"a super-eigenvalue is 2x2, got {L.shape}")
        return cls.from_rows(L.field, L.rows)

    @classmethod
    def companion(cls, g: Poly) -> SuperEigenvalue:
        """``[[-lam, 1], [-mu, 0]]`` for monic ``g = T^2 + lam T + mu``."""
        if g.degree != 2:
            raise ValueError("companion form needs a quadratic")
        g = g.monic()
        mu, lam, _ = g.coeffs
        field = g.field
        return cls(-lam, field.one, -mu, field.zero)

    @property
    def field(self) -> Field:
        return self.p.field

    @property
    def trace(self) -> FieldElement:
        return self.p + self.s

    @property
    def det(self) -> FieldElement:
        return self.p * self.s - self.q * self.r

    @property
    def charpoly(self) -> Poly:
        """T^2 - t T + d, identical to (T - p)(T - s) - qr."""
        return Poly(self.field, [self.det, -self.trace, 1])

    @property
    def similarity_class(self) -> SimilarityClass:
        return similarity_class(self.matrix())

    def matrix(self) -> Matrix:
        return Matrix(self.field, [[self.p, self.q], [self.r, self.s]])

    def rows(self) -> list[list[str]]:
        return [[str(self.p), str(self.q)], [str(self.r), str(self.s)]]

    def __str__(self):
        return str(self.matrix())


@dataclass(frozen=True)
class SuperEigenvector:
    u: Vector
    v: Vector

    def to_json(self) -> dict:
        return {"u": [str(x) for x in self.u], "v": [str(x) for x in self.v]}


@dataclass(frozen=True)
class PrimaryComponent:
    factor: Poly
    multiplicity: int
    basis: list

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class ProperClass:
    """One proper similarity class: companion representative plus a plane."""

    eigenvalue: SuperEigenvalue
    multiplicity: int
    factor: Poly
    plane: SuperEigenvector

    @property
    def similarity_class(self) -> SimilarityClass:
        return self.eigenvalue.similarity_class

    def to_json(self) -> dict:
        return {
            "class": self.similarity_class.to_json(),
            "companion": self.eigenvalue.rows(),
            "multiplicity": self.multiplicity,
            "plane": self.plane.to_json(),
        }


def _check_square(A: Matrix):
    if not A.is_square():
        raise ShapeError(f"expected a square matrix, got {A.shape}")


def _coords_in_plane(u, v, w):
    """(a, b) with w = a u + b v, or None; u, v assumed independent."""
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            m = u[i] * v[j] - u[j] * v[i]
            if not m.is_zero():
                inv = m.inverse()
                a = (w[i] * v[j] - w[j] * v[i]) * inv
                b = (u[i] * w[j] - u[j] * w[i]) * inv
                if all(x == a * y + b * z for x, y, z in zip(w, u, v)):
                    return a, b
                return None
    return None


def verify_invariant_subspace(A: Matrix, u, v) -> SuperEigenvalue | None:
    """Lambda with Au = pu + qv, Av = ru + sv if span(u, v) is an invariant plane."""
    _check_square(A)
    field = A.field
    u, v = tuple(field(x) for x in u), tuple(field(x) for x in v)
    if len(u) != A.nrows or len(v) != A.nrows:
        raise ShapeError(f"vectors of length {len(u)}, {len(v)} for a {A.nrows}x{A.nrows} matrix")
    if rank_of_vectors(field, [u, v]) != 2:
        return None
    first = _coords_in_plane(u, v, A.apply(u))
    if first is None:
        return None
    second = _coords_in_plane(u, v, A.apply(v))
    if second is None:
        return None
    return SuperEigenvalue(first[0], first[1], second[0], second[1])


def restriction_matrix(A: Matrix, u, v) -> Matrix | None:
    """Matrix of A restricted to span(u, v) in the basis (u, v); equals Lambda^T."""
    L = verify_invariant_subspace(A, u, v)
    return None if L is None else L.matrix().transpose()


def necessary_condition(A: Matrix, L: SuperEigenvalue) -> FieldElement:
    """det((A - pI)(A - sI) - qrI); zero whenever Lambda is a super-eigenvalue."""
    _check_square(A)
    return eval_poly(L.charpoly, A).det()


def is_proper_super_eigenvalue(A: Matrix, L: SuperEigenvalue) -> bool:
    _check_square(A)
    return quadratic_irreducible(L.charpoly) and necessary_condition(A, L).is_zero()


def proper_super_eigenvector(A: Matrix, L: SuperEigenvalue) -> SuperEigenvector:
    """Plane for a proper Lambda: u spans the start of ker p_Lambda(A), v = (A - pI)u / q."""
    _check_square(A)
    if not quadratic_irreducible(L.charpoly):
        raise ImproperError(f"{L} has a reducible characteristic polynomial")
    kernel = eval_poly(L.charpoly, A).kernel_basis()
    if not kernel:
        raise ImproperError(f"{L} is not a super-eigenvalue: det(p_Lambda(A)) != 0")
    u = kernel[0]
    # q != 0 because p_Lambda is irreducible
    v = vec_scale(L.q.inverse(), vec_sub(A.apply(u), vec_scale(L.p, u)))
    return SuperEigenvector(u, v)


def proper_super_eigenvalues(A: Matrix, seed: int = 0) -> list[ProperClass]:
    """One companion-form class per irreducible quadratic factor of charpoly(A)."""
    _check_square(A)
    out = []
    for rec in factor(A.charpoly(), seed=seed):
        if rec.factor.degree == 2:
            L = SuperEigenvalue.companion(rec.factor)
            out.append(ProperClass(L, rec.multiplicity, rec.factor, proper_super_eigenvector(A, L)))
    return out


def quadratic_factors(A: Matrix, seed: int = 0) -> list[FactorRecord]:
    return [r for r in factor(A.charpoly(), seed=seed) if r.factor.degree == 2]


def _nullity(M: Matrix) -> int:
    return M.ncols - M.rank()


def _split_roots(C: SimilarityClass):
    field = C.trace.field
    ok, w = (C.trace * C.trace - 4 * C.det).is_square()
    assert ok
    half = field(2).inverse()
    return (C.trace + w) * half, (C.trace - w) * half


def is_super_eigenvalue(A: Matrix, L: SuperEigenvalue) -> bool:
    """Whether some invariant plane of A carries Lambda (proper or not).

    Decided by the similarity class of Lambda:

    * irreducible: det(p_Lambda(A)) = 0;
    * split, eigenvalues a != c: both are eigenvalues of A;
    * scalar aI: the a-eigenspace has dimension >= 2;
    * jordan at a: ker (A - aI)^2 is strictly larger than ker (A - aI).
    """
    return find_super_eigenvector(A, L) is not None


def find_super_eigenvector(A: Matrix, L: SuperEigenvalue) -> SuperEigenvector | None:
    """Some plane carrying Lambda, or None; see :func:`is_super_eigenvalue`."""
    _check_square(A)
    field = A.field
    n = A.nrows
    C = L.similarity_class
    eye = Matrix.identity(field, n)
    if C.tag == "irreducible":
        if not necessary_condition(A, L).is_zero():
            return None
        return proper_super_eigenvector(A, L)
    if C.tag == "split":
        a, c = _split_roots(C)
        ka = (A - eye * a).kernel_basis()
        kc = (A - eye * c).kernel_basis()
        if ka and kc:
            return SuperEigenvector(ka[0], kc[0])
        return None
    a = C.trace * field(2).inverse()
    N = A - eye * a
    if C.tag == "scalar":
        k = N.kernel_basis()
        return SuperEigenvector(k[0], k[1]) if len(k) >= 2 else None
    k1 = N.kernel_basis()
    if not k1:
        return None
    for w in (N * N).kernel_basis():
        Nw = N.apply(w)
        if any(not x.is_zero() for x in Nw):
            return SuperEigenvector(Nw, w)
    return None


def plane_is_proper(A: Matrix, u, v) -> bool:
    """No eigenvector in span(u, v): the restriction has irreducible charpoly."""
    L = verify_invariant_subspace(A, u, v)
    if L is None:
        raise ValueError("span(u, v) is not an invariant plane")
    return quadratic_irreducible(L.charpoly)


def primary_components(A: Matrix, seed: int = 0) -> list[PrimaryComponent]:
    """V_i = ker(p_i(A)^alpha_i) for each irreducible quadratic factor p_i."""
    _check_square(A)
    out = []
    for rec in quadratic_factors(A, seed):
        basis = eval_poly(rec.factor**rec.multiplicity, A).kernel_basis()
        out.append(PrimaryComponent(rec.factor, rec.multiplicity, basis))
    return out
