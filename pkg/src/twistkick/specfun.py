"""Integer-order Bessel functions of the first kind.

Arguments up to 2 use the ascending power series; everything else uses
Miller's downward recurrence normalised with the Neumann sum
``J_0 + 2 * sum_k J_2k = 1``.  Both branches are vectorised over ``x``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

__all__ = ["bessel_j", "bessel_j_prime", "bessel_zeros"]

_SERIES_MAX_TERMS = 200
_RESCALE_ABOVE = 1e250
_SERIES_MAX_X = 2.0


def _as_order(n) -> int:
    if isinstance(n, (bool, np.bool_)) or int(n) != n:
        raise DomainError(f"Bessel order must be an integer, got {n!r}")
    return int(n)


def _check_argument(x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("Bessel argument must be finite")
    if np.any(arr < 0):
        raise DomainError("Bessel argument must be non-negative")
    return arr


def _series(n: int, x: np.ndarray) -> np.ndarray:
    # n >= 0
    half = 0.5 * x
    with np.errstate(divide="ignore", invalid="ignore"):
        log_t0 = n * np.log(half) - math.lgamma(n + 1)
    term = np.where(half > 0, np.exp(log_t0), 1.0 if n == 0 else 0.0)
    total = term.copy()
    q = -half * half
    for k in range(1, _SERIES_MAX_TERMS):
        term = term * q / (k * (k + n))
        total += term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
    return total


def _miller(n: int, x: np.ndarray) -> np.ndarray:
    # n >= 0, x > 0
    top = max(n, float(x.max()))
    start = int(top + 20 + 12 * top ** (1.0 / 3.0))
    start += start % 2
    j_next = np.zeros_like(x)
    j_cur = np.full_like(x, 1e-30)
    norm = np.zeros_like(x)
    out = np.zeros_like(x)
    two_over_x = 2.0 / x
    for m in range(start, 0, -1):
        # j_cur holds J_m (unnormalised); step down to J_{m-1}
        j_prev = m * two_over_x * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        if m - 1 == n:
            out = j_cur.copy()
        if (m - 1) % 2 == 0 and m - 1 > 0:
            norm += 2.0 * j_cur
        big = np.abs(j_cur) > _RESCALE_ABOVE
        if np.any(big):
            scale = np.where(big, 1.0 / _RESCALE_ABOVE, 1.0)
            j_cur *= scale
            j_next *= scale
            norm *= scale
            out *= scale
    norm += j_cur  # J_0 term
    return out / norm


def _bessel_nonneg(n: int, x: np.ndarray) -> np.ndarray:
    result = np.empty_like(x)
    # the alternating series loses ~log10(I_n(x)) digits to cancellation
    use_series = x <= _SERIES_MAX_X
    if np.any(use_series):
        result[use_series] = _series(n, x[use_series])
    if np.any(~use_series):
        result[~use_series] = _miller(n, x[~use_series])
    return result


def bessel_j(n, x):
    """Bessel function of the first kind ``J_n(x)`` for integer ``n`` and ``x >= 0``.

    Returns a float for scalar ``x`` and an ndarray otherwise.  Negative orders
    use ``J_{-n} = (-1)^n J_n``.
    """
    n = _as_order(n)
    arr = _check_argument(x)
    flat = np.atleast_1d(arr).ravel()
    values = _bessel_nonneg(abs(n), flat)
    if n < 0 and n % 2:
        values = -values
    values = values.reshape(arr.shape)
    return float(values) if values.ndim == 0 else values


def bessel_j_prime(n, x):
    """Derivative ``J_n'(x) = (J_{n-1}(x) - J_{n+1}(x)) / 2``."""
    n = _as_order(n)
    lo = np.asarray(bessel_j(n - 1, x))
    hi = np.asarray(bessel_j(n + 1, x))
    values = 0.5 * (lo - hi)
    return float(values) if values.ndim == 0 else values


def bessel_zeros(n, x_max: float, n_scan: int | None = None, xtol: float = 1e-14):
    """Positive zeros of ``J_n`` on ``(0, x_max]``, located by sign scan and bisection.

    The origin is excluded even when ``n != 0``.
    """
    n = _as_order(n)
    if n_scan is None:
        n_scan = max(2000, int(40 * x_max))
    grid = np.linspace(0.0, x_max, n_scan + 1)[1:]
    values = bessel_j(n, grid)
    zeros = []
    for i in np.nonzero(np.sign(values[:-1]) * np.sign(values[1:]) <= 0)[0]:
        a, b = grid[i], grid[i + 1]
        fa = values[i]
        if fa == 0.0:
            zeros.append(float(a))
            continue
        while b - a > xtol * max(1.0, abs(b)):
            mid = 0.5 * (a + b)
            fm = bessel_j(n, mid)
            if fm == 0.0:
                a = b = mid
                break
            if np.sign(fm) == np.sign(fa):
                a, fa = mid, fm
            else:
                b = mid
        zeros.append(0.5 * (a + b))
    # sign <= 0 flags both neighbours of an exact grid zero
    unique = []
    for z in zeros:
        if not unique or abs(z - unique[-1]) > 1e-12 * max(1.0, z):
            unique.append(z)
    return np.array(unique)
