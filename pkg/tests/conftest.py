from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from invplanes import GF, QQ, QSqrt
from invplanes.matrix import Matrix

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIELDS = [QQ, GF(3), GF(5), GF(7), GF(101), QSqrt(2), QSqrt(-1), QSqrt(5)]

SIGN_CYCLE = [[0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]


def sign_cycle(field) -> Matrix:
    """4x4 matrix with charpoly T^4 + 1."""
    return Matrix(field, SIGN_CYCLE)


small_fractions = st.builds(
    Fraction, st.integers(-20, 20), st.integers(1, 9)
)


def elements(field):
    if field.kind == "gf":
        return st.integers(0, field.p - 1).map(field)
    if field.kind == "q":
        return small_fractions.map(field)
    return st.tuples(small_fractions, small_fractions).map(field)


fields = st.sampled_from(FIELDS)


@st.composite
def field_and_elements(draw, count=3):
    field = draw(fields)
    return field, [draw(elements(field)) for _ in range(count)]


@st.composite
def square_matrices(draw, field, n):
    return Matrix(field, [[draw(elements(field)) for _ in range(n)] for _ in range(n)])


@pytest.fixture
def qsqrt2():
    return QSqrt(2)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[num])
