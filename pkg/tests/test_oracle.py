import pytest

from invplanes import GF, QQ
from invplanes.matrix import Matrix, rank_of_vectors
from invplanes.oracle import (
    MAX_WITNESSES,
    PROVED_CLAIMS,
    BudgetExceeded,
    ClaimCounter,
    claim_sweep,
    enum_2d_subspaces,
    gaussian_binomial_2,
    invariant_planes_bruteforce,
    proper_classes_bruteforce,
    super_eigenvalues_bruteforce,
)
from invplanes.supereig import proper_super_eigenvalues, verify_invariant_subspace

from conftest import sign_cycle


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("p", [3, 5])
def test_plane_counts(n, p):
    expected = gaussian_binomial_2(n, p)
    if p**n * expected > 10**7:
        with pytest.raises(BudgetExceeded):
            enum_2d_subspaces(n, p)
        return
    planes = enum_2d_subspaces(n, p)
    assert len(planes) == expected
    seen = set()
    for (i, j), x, y in planes:
        assert x[i] == 1 and y[j] == 1 and x[j] == 0
        assert all(c == 0 for c in x[:i]) and all(c == 0 for c in y[:j])
        seen.add((x, y))
    assert len(seen) == expected


def test_known_gaussian_values():
    assert [gaussian_binomial_2(n, 3) for n in (2, 3, 4)] == [1, 13, 130]
    assert gaussian_binomial_2(4, 5) == 806


def test_enumeration_rejects_bad_inputs():
    with pytest.raises(Exception):
        enum_2d_subspaces(3, 2)
    with pytest.raises(Exception):
        enum_2d_subspaces(3, 9)
    with pytest.raises(ValueError):
        enum_2d_subspaces(1, 3)
    with pytest.raises(BudgetExceeded):
        enum_2d_subspaces(4, 3, budget=1000)


def test_bruteforce_planes_are_invariant():
    K = GF(3)
    A = sign_cycle(K)
    planes = invariant_planes_bruteforce(A)
    assert len(planes) == 2 and all(r.proper for r in planes)
    for r in planes:
        assert rank_of_vectors(K, [r.x, r.y]) == 2
        assert verify_invariant_subspace(A, r.x, r.y) == r.eigenvalue
    assert proper_classes_bruteforce(A) == {c.similarity_class for c in proper_super_eigenvalues(A)}


def test_diagonal_plane_count():
    K = GF(3)
    A = Matrix.diag(K, [1, 2, 1, 2])
    planes = invariant_planes_bruteforce(A)
    assert len(planes) == 18
    assert not any(r.proper for r in planes)
    tags = {c.tag for c in super_eigenvalues_bruteforce(A)}
    assert tags == {"scalar", "split"}


def test_bruteforce_requires_prime_field():
    with pytest.raises(ValueError):
        invariant_planes_bruteforce(Matrix.identity(QQ, 2))
    with pytest.raises(ValueError):
        claim_sweep(QQ, 2, 1)


def test_claim_counter_caps_witnesses():
    c = ClaimCounter()
    for i in range(MAX_WITNESSES + 5):
        c.record(False, lambda i=i: i)
    c.record(True)
    assert c.violations == MAX_WITNESSES + 5
    assert c.confirmations == 1
    assert len(c.witnesses) == MAX_WITNESSES


@pytest.mark.parametrize("n", [2, 3])
def test_claim_sweep_has_no_proved_violations(n):
    report = claim_sweep(GF(3), n, samples=5, seed=3)
    assert report.proved_violations() == 0
    js = report.to_json()
    assert set(js["claims"]) == set(PROVED_CLAIMS)
    assert js["claims"]["theorem"]["checked"] == 5 * 81
    assert (js["det_test_agreement"] is None) == (n % 2 == 1)


def test_claim_sweep_on_given_matrices():
    K = GF(3)
    report = claim_sweep(K, 4, samples=0, matrices=[sign_cycle(K)])
    assert report.samples == 1
    assert report.proved_violations() == 0
    assert sum(report.det_test.values()) == 81


def test_claim_sweep_is_deterministic():
    a = claim_sweep(GF(3), 2, samples=4, seed=9).to_json()
    b = claim_sweep(GF(3), 2, samples=4, seed=9).to_json()
    assert a == b
