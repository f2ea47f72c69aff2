"""Brute-force ground truth over small prime fields.

Every 2-dimensional subspace of GF(p)^n is enumerated once, as a 2 x n
reduced echelon matrix (pivot columns i < j, then the free entries).
Invariance, the super-eigenvalue and properness of each plane are read
off directly with residue arithmetic, independent of the factorization
route in :mod:`invplanes.supereig`.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterator

from .field import GF, Field
from .matrix import Matrix, SimilarityClass
from .rmodule import det_test, r_eigen_solve
from .supereig import (
    SuperEigenvalue,
    is_proper_super_eigenvalue,
    is_super_eigenvalue,
    necessary_condition,
    proper_super_eigenvalues,
)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7
MAX_WITNESSES = 16


class BudgetExceeded(RuntimeError):
    pass


def gaussian_binomial_2(n: int, p: int) -> int:
    """Number of 2-dimensional subspaces of GF(p)^n."""
    return (p**n - 1) * (p**n - p) // ((p * p - 1) * (p * p - p))


@dataclass(frozen=True)
class PlaneEnumeration:
    n: int
    p: int

    def __len__(self) -> int:
        return gaussian_binomial_2(self.n, self.p)

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
        n, p = self.n, self.p
        for i, j in itertools.combinations(range(n), 2):
            # row x: 1 at i, 0 at j, free after i; row y: 1 at j, free after j
            xfree = [c for c in range(i + 1, n) if c != j]
            yfree = list(range(j + 1, n))
            for xs in itertools.product(range(p), repeat=len(xfree)):
                x = [0] * n
                x[i] = 1
                for c, val in zip(xfree, xs):
                    x[c] = val
                for ys in itertools.product(range(p), repeat=len(yfree)):
                    y = [0] * n
                    y[j] = 1
                    for c, val in zip(yfree, ys):
                        y[c] = val
                    yield (i, j), tuple(x), tuple(y)


def enum_2d_subspaces(n: int, p: int, budget: int = DEFAULT_BUDGET) -> PlaneEnumeration:
    if n < 2:
        raise ValueError("planes need n >= 2")
    GF(p)  # rejects non-primes and p = 2
    planes = PlaneEnumeration(n, p)
    if p**n * len(planes) > budget:
        raise BudgetExceeded(f"GF({p})^{n}: {p**n} * {len(planes)} exceeds the budget {budget}")
    return planes


@dataclass(frozen=True)
class PlaneRecord:
    """An invariant plane in canonical echelon basis (x, y), with its Lambda."""

    x: tuple
    y: tuple
    eigenvalue: SuperEigenvalue
    proper: bool

    @property
    def similarity_class(self) -> SimilarityClass:
        return self.eigenvalue.similarity_class


def _matvec(rows, w, p):
    return tuple(sum(a * b for a, b in zip(r, w)) % p for r in rows)


def _is_eigenvector(rows, w, p) -> bool:
    Aw = _matvec(rows, w, p)
    n = len(w)
    return all((Aw[a] * w[b] - Aw[b] * w[a]) % p == 0 for a in range(n) for b in range(a + 1, n))


def invariant_planes_bruteforce(A: Matrix, budget: int = DEFAULT_BUDGET) -> list[PlaneRecord]:
    field = A.field
    if field.kind != "gf":
        raise ValueError("brute force needs a prime field")
    p, n = field.p, A.nrows
    rows = [[x.value for x in r] for r in A.rows]
    out = []
    for (i, j), x, y in enum_2d_subspaces(n, p, budget):
        Ax = _matvec(rows, x, p)
        a, b = Ax[i], Ax[j]
        if any((Ax[c] - a * x[c] - b * y[c]) % p for c in range(n)):
            continue
        Ay = _matvec(rows, y, p)
        c, e = Ay[i], Ay[j]
        if any((Ay[m] - c * x[m] - e * y[m]) % p for m in range(n)):
            continue
        lines = [y] + [tuple((xv + t * yv) % p for xv, yv in zip(x, y)) for t in range(p)]
        proper = not any(_is_eigenvector(rows, w, p) for w in lines)
        L = SuperEigenvalue(field(a), field(b), field(c), field(e))
        out.append(PlaneRecord(tuple(map(field, x)), tuple(map(field, y)), L, proper))
    return out


def super_eigenvalues_bruteforce(A: Matrix, budget: int = DEFAULT_BUDGET) -> frozenset[SimilarityClass]:
    return frozenset(r.similarity_class for r in invariant_planes_bruteforce(A, budget))


def proper_classes_bruteforce(A: Matrix, budget: int = DEFAULT_BUDGET) -> frozenset[SimilarityClass]:
    return frozenset(r.similarity_class for r in invariant_planes_bruteforce(A, budget) if r.proper)


def all_lambdas(field: Field) -> Iterator[SuperEigenvalue]:
    for p, q, r, s in itertools.product(list(field.elements()), repeat=4):
        yield SuperEigenvalue(p, q, r, s)


@dataclass
class ClaimCounter:
    checked: int = 0
    confirmations: int = 0
    violations: int = 0
    witnesses: list = dc_field(default_factory=list)

    def record(self, ok: bool, witness=None):
        self.checked += 1
        if ok:
            self.confirmations += 1
        else:
            self.violations += 1
            if len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(witness() if callable(witness) else witness)

    def to_json(self) -> dict:
        return {
            "checked": self.checked,
            "confirmations": self.confirmations,
            "violations": self.violations,
            "witnesses": self.witnesses,
        }


# Statements that are theorems (or exact algorithmic contracts); any
# violation is an implementation bug.
PROVED_CLAIMS = (
    "theorem",
    "necessity",
    "regular_equivalence",
    "bound",
    "oracle_agreement",
    "improper_classifier",
)


@dataclass
class ClaimReport:
    field: Field
    n: int
    samples: int
    seed: int
    claims: dict = dc_field(default_factory=lambda: {name: ClaimCounter() for name in PROVED_CLAIMS})
    det_test: dict | None = None

    def proved_violations(self) -> int:
        return sum(self.claims[name].violations for name in PROVED_CLAIMS)

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "claims": {name: c.to_json() for name, c in self.claims.items()},
            "det_test_agreement": self.det_test,
            "proved_violations": self.proved_violations(),
        }


def _rows(M: Matrix):
    return [[str(x) for x in r] for r in M.rows]


def sample_matrices(field: Field, n: int, count: int, seed: int) -> list[Matrix]:
    rng = random.Random(seed)
    return [Matrix.random(field, n, n, rng) for _ in range(count)]


def check_matrix(A: Matrix, report: ClaimReport, budget: int = DEFAULT_BUDGET) -> None:
    """Run every claim for one A against all p^4 candidate Lambdas."""
    field = A.field
    n = A.nrows
    planes = invariant_planes_bruteforce(A, budget)
    super_classes = {r.similarity_class for r in planes}
    proper = {r.similarity_class for r in planes if r.proper}
    claims = report.claims

    algebraic = {pc.similarity_class for pc in proper_super_eigenvalues(A)}
    claims["oracle_agreement"].record(
        algebraic == proper,
        lambda: {
            "A": _rows(A),
            "factorization": sorted(str(c) for c in algebraic),
            "bruteforce": sorted(str(c) for c in proper),
        },
    )
    claims["bound"].record(
        len(proper) <= n // 2 and len(algebraic) <= n // 2,
        lambda: {"A": _rows(A), "proper_classes": len(proper), "bound": n // 2},
    )

    for L in all_lambdas(field):
        cls = L.similarity_class
        is_super = cls in super_classes
        is_prop = cls in proper

        def wit(**extra):
            return lambda: {"A": _rows(A), "lambda": L.rows(), **extra}

        algebra_proper = is_proper_super_eigenvalue(A, L)
        claims["theorem"].record(algebra_proper == is_prop, wit(algebra=algebra_proper, bruteforce=is_prop))

        accepted = is_super_eigenvalue(A, L)
        claims["improper_classifier"].record(accepted == is_super, wit(algebra=accepted, bruteforce=is_super))
        if accepted or is_super:
            nc = necessary_condition(A, L)
            claims["necessity"].record(nc.is_zero(), wit(necessary_condition=str(nc)))

        sol = r_eigen_solve(A, L)
        claims["regular_equivalence"].record(sol.regular == is_super, wit(regular=sol.regular, bruteforce=is_super))

        if report.det_test is not None:
            dt_zero = det_test(A, L).is_zero()
            key = ("det0" if dt_zero else "detnz") + ("_super" if is_super else "_not_super")
            report.det_test[key] += 1


def claim_sweep(
    field: Field,
    n: int,
    samples: int,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    matrices: list[Matrix] | None = None,
) -> ClaimReport:
    """Check every claim on ``samples`` seeded random n x n matrices (or the given ones)."""
    if field.kind != "gf":
        raise ValueError("claim sweeps need a prime field")
    enum_2d_subspaces(n, field.p, budget)
    if matrices is None:
        matrices = sample_matrices(field, n, samples, seed)
    report = ClaimReport(field, n, len(matrices), seed)
    if n % 2 == 0:
        report.det_test = {"det0_super": 0, "det0_not_super": 0, "detnz_super": 0, "detnz_not_super": 0}
    for idx, A in enumerate(matrices):
        log.debug("claim sweep %s n=%d: matrix %d/%d", field, n, idx + 1, len(matrices))
        check_matrix(A, report, budget)
    return report
