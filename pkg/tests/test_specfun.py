import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import jv

from twistkick.errors import DomainError
from twistkick.specfun import bessel_j, bessel_j_prime, bessel_zeros

GRID = np.linspace(0.1, 50.0, 400)
ORDERS = range(-5, 9)


def series_j0(x):
    # independent power-series oracle, exact rational arithmetic in floats via fsum
    terms = [(-1) ** k * (x / 2) ** (2 * k) / math.factorial(k) ** 2 for k in range(40)]
    return math.fsum(terms)


def test_origin_values():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(1, 0.0) == 0.0
    assert bessel_j(-3, 0.0) == 0.0


def test_first_zero_of_j0_from_series_oracle():
    a, b = 2.0, 3.0
    for _ in range(60):
        mid = 0.5 * (a + b)
        if series_j0(a) * series_j0(mid) <= 0:
            b = mid
        else:
            a = mid
    root = 0.5 * (a + b)
    assert root == pytest.approx(2.404825557695773, abs=1e-12)
    assert abs(bessel_j(0, 2.404825557695773)) < 1e-10


def test_negative_order_parity():
    assert bessel_j(-2, 3.1) == bessel_j(2, 3.1)
    assert bessel_j(-3, 3.1) == -bessel_j(3, 3.1)


@pytest.mark.parametrize("n", [-7, -1, 0, 1, 2, 5, 13, 40, 200])
def test_against_scipy(n):
    x = np.concatenate([np.linspace(0, 1000, 5001), np.logspace(-9, 1, 200)])
    assert np.max(np.abs(bessel_j(n, x) - jv(n, x))) <= 1e-12


def test_recurrence():
    for n in ORDERS:
        resid = bessel_j(n - 1, GRID) + bessel_j(n + 1, GRID) - 2 * n / GRID * bessel_j(n, GRID)
        assert np.max(np.abs(resid)) <= 1e-10, n


def test_parity_grid():
    for n in range(1, 9):
        assert np.array_equal(bessel_j(-n, GRID), (-1) ** n * bessel_j(n, GRID))


def test_bounded():
    for n in ORDERS:
        assert np.all(np.abs(bessel_j(n, GRID)) <= 1.0)


def test_derivative_examples():
    assert bessel_j_prime(0, 0.0) == 0.0
    assert bessel_j_prime(1, 0.0) == 0.5
    h = 1e-5
    fd = (bessel_j(2, 1.3 + h) - bessel_j(2, 1.3 - h)) / (2 * h)
    assert bessel_j_prime(2, 1.3) == pytest.approx(fd, abs=1e-8)


def test_derivative_matches_central_differences():
    h = 1e-5
    for n in ORDERS:
        fd = (bessel_j(n, GRID + h) - bessel_j(n, GRID - h)) / (2 * h)
        assert np.max(np.abs(bessel_j_prime(n, GRID) - fd)) <= 1e-8, n


@settings(max_examples=200, deadline=None)
@given(n=st.integers(-20, 20), x=st.floats(0.0, 300.0))
def test_bounded_and_parity_property(n, x):
    value = bessel_j(n, x)
    assert abs(value) <= 1.0
    assert bessel_j(-n, x) == (-1) ** (n % 2) * value


@pytest.mark.parametrize("bad", [-1.0, float("nan"), float("inf")])
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        bessel_j(0, bad)


def test_non_integer_order_rejected():
    with pytest.raises(DomainError):
        bessel_j(0.5, 1.0)


def test_array_shape_preserved():
    x = np.linspace(0, 5, 12).reshape(3, 4)
    assert bessel_j(1, x).shape == (3, 4)
    assert isinstance(bessel_j(1, 2.0), float)


def test_zeros():
    zeros = bessel_zeros(1, 20.0)
    expected = [3.8317059702075125, 7.015586669815619, 10.173468135062722, 13.323691936314223, 16.470630050877634,
                19.615858510468243]
    assert zeros == pytest.approx(expected, abs=1e-12)
