"""Acceptance gate: ten end-to-end criteria, one PASS/FAIL line each.

The lines are printed in the pytest terminal summary (see conftest.py).
"""

import contextlib
import functools
import json
import random
import time
from fractions import Fraction

from invplanes import GF, QQ, QSqrt, cli
from invplanes.matrix import Matrix, in_span, rank_of_vectors, vec_add, vec_scale
from invplanes.oracle import claim_sweep, enum_2d_subspaces, gaussian_binomial_2
from invplanes.poly import BivarPoly, Poly, factor, multiply_out, super_char_poly
from invplanes.rmodule import ModulePair, alpha, alpha_inv, det_test, f_apply, r_action, tilde, untilde, x_matrix
from invplanes.supereig import (
    SuperEigenvalue,
    is_proper_super_eigenvalue,
    is_super_eigenvalue,
    necessary_condition,
    primary_components,
    proper_super_eigenvalues,
    verify_invariant_subspace,
)

from conftest import sign_cycle

RESULTS: dict[int, str] = {}


@contextlib.contextmanager
def criterion(num: int, title: str, limit: float | None = None):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        RESULTS[num] = f"FAIL [{num:2d}] {title}: {type(exc).__name__}: {exc}".rstrip()
        raise
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        RESULTS[num] = f"FAIL [{num:2d}] {title}: {elapsed:.2f}s exceeds {limit:g}s"
        raise AssertionError(RESULTS[num])
    RESULTS[num] = f"PASS [{num:2d}] {title} ({elapsed:.2f}s)"


# Sweeps shared by criteria 2, 3, 4 and 7; each runs once and is timed once.
SWEEP_TIMES: dict[tuple, float] = {}


@functools.lru_cache(maxsize=None)
def sweep(p: int, n: int, samples: int, seed: int):
    start = time.perf_counter()
    report = claim_sweep(GF(p), n, samples, seed)
    SWEEP_TIMES[(p, n, samples, seed)] = time.perf_counter() - start
    return report


THEOREM_SWEEPS = [(3, n, 25, 100 + n) for n in (2, 3, 4)]
ORACLE_SWEEPS = [(3, 4, 25, 104), (5, 4, 10, 205)]


def test_criterion_01_sign_cycle_over_qsqrt2():
    with criterion(1, "4x4 sign-cycle matrix over QQ(sqrt(2)) end to end", limit=1.0):
        K = QSqrt(2)
        A = sign_cycle(K)
        r2 = K.sqrt_d()
        assert A.charpoly() == Poly.parse(K, "T^4+1")

        F = super_char_poly(A)
        t, d = BivarPoly.t(K), BivarPoly.d(K)
        assert F == t * t * t * t - 4 * d * t * t + (d * d + 1) * (d * d + 1)

        classes = proper_super_eigenvalues(A)
        assert [(c.similarity_class.trace, c.similarity_class.det) for c in classes] == [(r2, K.one), (-r2, K.one)]

        plane = classes[0].plane
        known = [(K(0), K(1), r2, K(1)), (K(1), K(0), K(-1), -r2)]
        mine = [plane.u, plane.v]
        assert rank_of_vectors(K, mine) == 2
        assert all(in_span(K, known, w) for w in mine)
        assert all(in_span(K, mine, w) for w in known)

        for c in classes:
            L, u, v = c.eigenvalue, c.plane.u, c.plane.v
            assert A.apply(u) == vec_add(vec_scale(L.p, u), vec_scale(L.q, v))
            assert A.apply(v) == vec_add(vec_scale(L.r, u), vec_scale(L.s, v))
        L = verify_invariant_subspace(A, *known)
        assert L.similarity_class == classes[0].similarity_class


def test_criterion_02_theorem_biconditional():
    with criterion(2, "proper iff brute-force proper, GF(3), 81 Lambdas, n = 2, 3, 4, 25 A each", limit=60.0):
        for key in THEOREM_SWEEPS:
            report = sweep(*key)
            thm = report.claims["theorem"]
            assert report.samples == 25
            assert thm.checked == 25 * 81
            assert thm.violations == 0, thm.witnesses
        assert sum(SWEEP_TIMES[k] for k in THEOREM_SWEEPS) < 60.0


def test_criterion_03_oracle_equivalence():
    with criterion(3, "factorization classes == plane-enumeration classes, GF(3) and GF(5), n = 4", limit=300.0):
        assert len(enum_2d_subspaces(4, 3)) == gaussian_binomial_2(4, 3) == 130
        assert len(enum_2d_subspaces(4, 5)) == gaussian_binomial_2(4, 5) == 806
        assert sum(1 for _ in enum_2d_subspaces(4, 5)) == 806
        for key, count in zip(ORACLE_SWEEPS, (25, 10)):
            report = sweep(*key)
            agree = report.claims["oracle_agreement"]
            assert agree.checked == count
            assert agree.violations == 0, agree.witnesses


def test_criterion_04_necessity():
    with criterion(4, "every accepted Lambda has det(p_Lambda(A)) = 0 over all sweeps"):
        checked = 0
        for key in THEOREM_SWEEPS + ORACLE_SWEEPS:
            nec = sweep(*key).claims["necessity"]
            assert nec.violations == 0, nec.witnesses
            checked += nec.checked
        assert checked > 0


def test_criterion_05_converse_failure():
    with criterion(5, "diag(1,2) with Lambda = diag(1,5): condition holds, not a super-eigenvalue"):
        A = Matrix.diag(QQ, [1, 2])
        L = SuperEigenvalue.from_rows(QQ, [[1, 0], [0, 5]])
        assert necessary_condition(A, L) == QQ.zero
        assert is_super_eigenvalue(A, L) is False


def test_criterion_06_claim_report():
    with criterion(6, "claims report with det_test agreement matrix; recorded counterexample facts"):
        for n in (2, 4):
            status, text = cli.run(["claims", "--field", "gf:3", "--n", str(n), "--samples", "25", "--seed", "6"])
            assert status == 0, text
            report = json.loads(text)
            agreement = report["det_test_agreement"]
            assert set(agreement) == {"det0_super", "det0_not_super", "detnz_super", "detnz_not_super"}
            assert sum(agreement.values()) == 25 * 81
            for name in ("theorem", "necessity", "regular_equivalence", "bound"):
                assert report["claims"][name]["violations"] == 0
            assert report["proved_violations"] == 0

        A = Matrix(QQ, [[1, 1], [-2, -1]])
        L = SuperEigenvalue.from_rows(QQ, [[0, -1], [1, 0]])
        assert (A * A + Matrix.identity(QQ, 2)).is_zero()
        assert is_proper_super_eigenvalue(A, L) is True
        assert det_test(A, L) == QQ(-1)


def test_criterion_07_bound_and_decomposition():
    with criterion(7, "at most n/2 proper classes; primary components of the sign-cycle matrix"):
        for key in THEOREM_SWEEPS + ORACLE_SWEEPS:
            bound = sweep(*key).claims["bound"]
            assert bound.violations == 0, bound.witnesses
        for K in (QSqrt(2), GF(3)):
            A = sign_cycle(K)
            assert len(proper_super_eigenvalues(A)) <= 2
            comps = primary_components(A)
            assert [c.dim for c in comps] == [2, 2]
            a, b = comps[0].basis, comps[1].basis
            # dim(V1 + V2) = dim V1 + dim V2 means V1 and V2 meet only in 0
            assert rank_of_vectors(K, a + b) == len(a) + len(b) == 4


def _random_poly(field, rng):
    def coeff():
        if field.kind == "gf":
            return field(rng.randrange(field.p))
        if field.kind == "q":
            return field(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
        return field((Fraction(rng.randint(-5, 5), rng.randint(1, 3)), rng.randint(-3, 3)))

    if rng.random() < 0.5:
        return Poly(field, [coeff() for _ in range(rng.randint(1, 9))])
    f = Poly.constant(field, 1)
    while True:
        g = Poly(field, [coeff() for _ in range(rng.randint(2, 4))])
        if f.degree + g.degree > 8 or g.degree < 1:
            break
        f = f * g ** rng.randint(1, 2) if f.degree + 2 * g.degree <= 8 else f * g
    return f if f.degree >= 1 else Poly.T(field) + coeff()


def test_criterion_08_factorization_self_check():
    with criterion(8, "1000 random polynomials per backend refactor exactly; T^4+1 over four fields", limit=120.0):
        for field in (QQ, GF(3), GF(5), QSqrt(2)):
            rng = random.Random(8000 + field.characteristic)
            i = 0
            while i < 1000:
                f = _random_poly(field, rng)
                if f.is_zero():
                    continue
                i += 1
                assert f.degree <= 8
                recs = factor(f, seed=i)
                assert multiply_out(field, f.lc, recs) == f, (str(field), str(f))

        def split(K):
            return [str(r.factor) for r in factor(Poly.parse(K, "T^4+1"))]

        assert split(QQ) == ["T^4+1"]
        assert split(QSqrt(2)) == ["T^2-sqrt(2)*T+1", "T^2+sqrt(2)*T+1"]
        assert split(GF(3)) == ["T^2+T+2", "T^2+2*T+2"]
        assert split(GF(5)) == ["T^2+2", "T^2+3"]


def test_criterion_09_module_structure():
    with criterion(9, "tilde/alpha/x_matrix identities and R-linearity, GF(3), n = 2, 4, 6"):
        K = GF(3)
        rng = random.Random(9)
        for n in (2, 4, 6):
            for _ in range(100):
                A = Matrix.random(K, n, n, rng)
                B = Matrix.random(K, n, n, rng)
                assert untilde(tilde(A)) == A
                assert alpha(alpha_inv(A)) == A
                assert alpha(tilde(A) * tilde(B)) == alpha(tilde(A)) * alpha(tilde(B))
                assert x_matrix(A) == Matrix.block_diag(A, A)
                L = SuperEigenvalue(*(K(rng.randrange(3)) for _ in range(4)))
                w = ModulePair(
                    tuple(K(rng.randrange(3)) for _ in range(n)),
                    tuple(K(rng.randrange(3)) for _ in range(n)),
                )
                assert f_apply(A, r_action(L, w)) == r_action(L, f_apply(A, w))


def test_criterion_10_similarity_covariance():
    with criterion(10, "500 basis changes of a fixed plane over GF(5) keep the similarity class"):
        K = GF(5)
        A = sign_cycle(K)
        plane = proper_super_eigenvalues(A)[0].plane
        base = verify_invariant_subspace(A, plane.u, plane.v).similarity_class
        rng = random.Random(10)
        done = 0
        while done < 500:
            a, b, c, d = (K(rng.randrange(5)) for _ in range(4))
            if (a * d - b * c).is_zero():
                continue
            u = vec_add(vec_scale(a, plane.u), vec_scale(b, plane.v))
            v = vec_add(vec_scale(c, plane.u), vec_scale(d, plane.v))
            L = verify_invariant_subspace(A, u, v)
            assert L is not None
            assert L.similarity_class == base
            done += 1
