from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from courant_tensorial.exact import RatMatrix, as_rational, format_rational, kernel_basis, rational_arith

from conftest import small_rationals


def test_as_rational_accepts_exact_inputs():
    assert as_rational(3) == 3
    assert as_rational("-3/6") == Fraction(-1, 2)
    assert as_rational(Fraction(2, 4)) == Fraction(1, 2)


@pytest.mark.parametrize("bad", [0.5, True, "1/0", "x"])
def test_as_rational_rejects(bad):
    with pytest.raises((TypeError, ValueError, ZeroDivisionError)):
        as_rational(bad)


def test_format_rational():
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    assert format_rational(Fraction(4, 2)) == "2"


def test_rational_arith_ops():
    assert rational_arith("1/2", "1/3", "add") == Fraction(5, 6)
    assert rational_arith(1, 3, "div") == Fraction(1, 3)
    assert rational_arith("2/3", op="neg") == Fraction(-2, 3)
    with pytest.raises(ZeroDivisionError):
        rational_arith(1, 0, "div")


def test_matrix_inverse_and_power():
    A = RatMatrix.from_rows([[2, 1], [1, 1]])
    assert A @ A.inverse() == RatMatrix.identity(2)
    assert A ** -1 == A.inverse()
    assert A ** 3 == A @ A @ A
    with pytest.raises(ZeroDivisionError):
        RatMatrix.from_rows([[1, 2], [2, 4]]).inverse()


def test_rref_and_rank():
    M = RatMatrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    R, pivots = M.rref()
    assert pivots == (0, 1)
    assert M.rank() == 2
    assert R.row(2) == (0, 0, 0)


matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(small_rationals, min_size=r * c, max_size=r * c).map(lambda e: RatMatrix(r, c, e))))


@given(matrices)
def test_kernel_vectors_are_annihilated(M):
    ker = kernel_basis(M)
    assert len(ker) == M.cols - M.rank()
    for v in ker:
        assert (M @ v).is_zero()
        first = next(x for x in v.column(0) if x)
        assert first == 1


@given(matrices)
def test_transpose_is_involutive(M):
    assert M.T.T == M
