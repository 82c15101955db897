from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from translie import linalg as la
from translie.series import SeriesMatrix, TruncSeries, exp_matrix, exp_scalar

K = 6
coef = st.fractions(min_value=-5, max_value=5, max_denominator=6)
series = st.lists(coef, min_size=K, max_size=K).map(TruncSeries)
units = series.filter(lambda s: s.is_unit())


@given(series, series, series)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(units)
def test_inverse(a):
    assert a * a.inverse() == TruncSeries.constant(1, K)
    assert a ** -2 * a**2 == 1


def test_non_unit():
    with pytest.raises(ZeroDivisionError):
        TruncSeries.h(K).inverse()


def test_order_mismatch():
    with pytest.raises(ValueError):
        TruncSeries.h(3) + TruncSeries.h(4)


@given(coef, coef)
def test_exp_scalar_homomorphism(a, b):
    assert exp_scalar(a, K) * exp_scalar(b, K) == exp_scalar(a + b, K)


def test_exp_coefficients():
    e = exp_scalar(2, 5)
    assert e.coeffs == tuple(Fraction(2**k, factorial(k)) for k in range(5))
    assert TruncSeries.h(3) ** 3 == 0


def test_repr():
    assert repr(TruncSeries([1, 0, 2])) == "1 + 2*h^2 + O(h^3)"


A = la.qmatrix([[1, 2], [0, -1]])
B = la.qmatrix([[0, 1], [1, 0]])


def test_matrix_exp_and_inverse():
    X = exp_matrix(A, K)
    Y = exp_matrix(-A, K)
    assert X @ Y == SeriesMatrix.identity(2, K)
    assert X.inverse() == Y
    Z = SeriesMatrix.constant(B, K) @ X
    assert Z @ Z.inverse() == SeriesMatrix.identity(2, K)


def test_det_of_exp_is_exp_of_trace():
    C = la.qmatrix([[1, 2, 0], [3, -1, 1], [0, 1, 2]])
    assert exp_matrix(C, K).det() == exp_scalar(la.trace(C), K)


def test_det_with_non_unit_pivot():
    # constant part is singular in the first column
    h = TruncSeries.h(K)
    one = TruncSeries.constant(1, K)
    M = SeriesMatrix.from_entries([[h, one], [one, h]])
    assert M.det() == h * h - 1


def test_ndarray_on_left():
    X = exp_matrix(A, K)
    assert (B @ X).coeffs[1][0, 0] == la.matmul(B, A)[0, 0]


def test_exterior_power_of_series():
    X = exp_matrix(la.qmatrix([[1, 0, 1], [0, 2, 0], [1, 1, 0]]), 4)
    top = X.exterior_power(3)
    assert top.entry(0, 0) == X.det()
    assert X.exterior_power(1) == X


def test_transpose_and_trace():
    X = exp_matrix(A, K)
    assert X.T.T == X
    assert X.trace() == exp_scalar(1, K) + exp_scalar(-1, K)
