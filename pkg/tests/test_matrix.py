import itertools
import random

import pytest
from hypothesis import given, strategies as st

from invplanes import GF, QQ, QSqrt
from invplanes.matrix import (
    Matrix,
    ShapeError,
    eval_poly,
    in_span,
    rank_of_vectors,
    similarity_class,
)
from invplanes.poly import Poly

from conftest import fields, sign_cycle, square_matrices


def laplace_det(rows, field):
    n = len(rows)
    if n == 0:
        return field.one
    acc = field.zero
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * laplace_det(minor, field)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def laplace_charpoly(A: Matrix) -> Poly:
    """det(xI - A) by cofactor expansion over polynomial entries."""
    field = A.field
    T = Poly.T(field)
    n = A.nrows
    rows = [[(T if i == j else Poly(field)) - A[i, j] for j in range(n)] for i in range(n)]

    def det(rs):
        if not rs:
            return Poly.constant(field, 1)
        acc = Poly(field)
        for j in range(len(rs)):
            minor = [r[:j] + r[j + 1:] for r in rs[1:]]
            term = rs[0][j] * det(minor)
            acc = acc + term if j % 2 == 0 else acc - term
        return acc

    return det(rows)


def test_charpoly_exhaustive_2x2_gf3():
    K = GF(3)
    for entries in itertools.product(range(3), repeat=4):
        A = Matrix(K, [entries[:2], entries[2:]])
        assert A.charpoly() == laplace_charpoly(A)


@pytest.mark.parametrize("n", [3, 4])
def test_charpoly_sampled_gf3(n):
    K = GF(3)
    rng = random.Random(n)
    for _ in range(60):
        A = Matrix.random(K, n, n, rng)
        assert A.charpoly() == laplace_charpoly(A)


@given(st.data())
def test_charpoly_and_det_agree_with_laplace(data):
    field = data.draw(fields)
    n = data.draw(st.integers(1, 4))
    A = data.draw(square_matrices(field, n))
    assert A.charpoly() == laplace_charpoly(A)
    assert A.det() == laplace_det([list(r) for r in A.rows], field)


@given(st.data())
def test_cayley_hamilton(data):
    field = data.draw(fields)
    n = data.draw(st.integers(1, 5))
    A = data.draw(square_matrices(field, n))
    assert eval_poly(A.charpoly(), A).is_zero()


@given(st.data())
def test_det_is_multiplicative(data):
    field = data.draw(fields)
    n = data.draw(st.integers(1, 4))
    A = data.draw(square_matrices(field, n))
    B = data.draw(square_matrices(field, n))
    assert (A * B).det() == A.det() * B.det()


@given(st.data())
def test_kernel_basis(data):
    field = data.draw(fields)
    n = data.draw(st.integers(1, 5))
    A = data.draw(square_matrices(field, n))
    ker = A.kernel_basis()
    assert A.rank() + len(ker) == n
    for w in ker:
        assert all(x.is_zero() for x in A.apply(w))
    assert rank_of_vectors(field, ker) == len(ker)


def test_rref_is_canonical():
    K = QQ
    A = Matrix(K, [[2, 4, 1], [1, 2, 0], [3, 6, 1]])
    R, piv = A.rref()
    assert piv == [0, 2]
    assert R == Matrix(K, [[1, 2, 0], [0, 0, 1], [0, 0, 0]])
    assert A.kernel_basis() == [(K(-2), K(1), K(0))]


def test_companion_has_given_charpoly():
    K = QSqrt(2)
    f = Poly.parse(K, "T^4 - sqrt(2)*T^2 + 3*T - 1/2")
    C = Matrix.companion(f)
    assert C.charpoly() == f


def test_sign_cycle_charpoly(qsqrt2):
    for K in (QQ, qsqrt2, GF(3), GF(5)):
        A = sign_cycle(K)
        assert A.charpoly() == Poly.parse(K, "T^4+1")
        assert A.det() == K.one


@pytest.mark.parametrize(
    "rows, tag",
    [
        ([[2, 0], [0, 2]], "scalar"),
        ([[2, 1], [0, 2]], "jordan"),
        ([[1, 0], [0, 2]], "split"),
        ([[0, -1], [1, 0]], "irreducible"),
    ],
)
def test_similarity_class_tags_over_q(rows, tag):
    assert similarity_class(Matrix(QQ, rows)).tag == tag


def test_similarity_class_respects_field():
    L = [[0, -1], [1, 0]]
    assert similarity_class(Matrix(QQ, L)).tag == "irreducible"
    assert similarity_class(Matrix(QSqrt(-1), L)).tag == "split"
    assert similarity_class(Matrix(GF(5), L)).tag == "split"
    assert similarity_class(Matrix(GF(3), L)).tag == "irreducible"


@given(st.data())
def test_similarity_class_is_conjugation_invariant(data):
    field = data.draw(fields)
    L = data.draw(square_matrices(field, 2))
    P = data.draw(square_matrices(field, 2))
    if P.det().is_zero():
        return
    Pinv_rows = [[P[1, 1], -P[0, 1]], [-P[1, 0], P[0, 0]]]
    Pinv = Matrix(field, Pinv_rows) * P.det().inverse()
    assert similarity_class(Pinv * L * P) == similarity_class(L)


@given(st.data())
def test_json_round_trip(data):
    field = data.draw(fields)
    A = data.draw(square_matrices(field, data.draw(st.integers(1, 4))))
    assert Matrix.from_json(A.to_json()) == A


def test_shape_errors():
    K = QQ
    with pytest.raises(ShapeError):
        Matrix(K, [[1, 2], [3]])
    with pytest.raises(ShapeError):
        Matrix(K, [[1, 2]]) * Matrix(K, [[1, 2]])
    with pytest.raises(ShapeError):
        Matrix(K, [[1, 2]]).det()


def test_block_diag_and_in_span():
    K = GF(5)
    A = Matrix(K, [[1, 2], [3, 4]])
    B = Matrix.block_diag(A, A)
    assert B[2, 3] == K(2) and B[0, 3] == K(0)
    assert in_span(K, [(K(1), K(0), K(1)), (K(0), K(1), K(0))], (K(2), K(3), K(2)))
    assert not in_span(K, [(K(1), K(0), K(1))], (K(0), K(0), K(1)))
