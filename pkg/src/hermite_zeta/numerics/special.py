"""Scalar special functions: Bernoulli numbers, the bracket kernel, and Gamma.

The Gamma routines use the Lanczos approximation (g = 7, the nine standard
coefficients) for |s| < 10 and the Stirling series beyond, where Lanczos'
own truncation error grows to ~2e-13. The left half-plane is reached by
reflection in ``gamma`` and by upward recurrence in ``log_gamma``, so its
imaginary part follows the same branch as ``mpmath.loggamma``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from math import comb

import numpy as np

from ..errors import DomainError, PoleError

__all__ = [
    "BERNOULLI",
    "bernoulli_number",
    "bracket_kernel",
    "bracket_kernel_array",
    "bracket_direct",
    "bracket_series",
    "bracket_over_v_series",
    "gamma",
    "log_gamma",
    "reciprocal_gamma",
    "pos_pow",
    "sinpi",
    "BRACKET_SWITCH",
]

POLE_RADIUS = 1e-14


def _bernoulli_table(n_max):
    b = [Fraction(1)]
    for m in range(1, n_max + 1):
        acc = sum(comb(m + 1, k) * b[k] for k in range(m))
        b.append(-acc / (m + 1))
    return tuple(b)


# B_0 .. B_60 as exact fractions, B_1 = -1/2 convention.
BERNOULLI = _bernoulli_table(60)


def bernoulli_number(n):
    """Exact Bernoulli number ``B_n`` (``B_1 = -1/2``) for ``0 <= n <= 60``."""
    if not 0 <= n < len(BERNOULLI):
        raise DomainError(f"Bernoulli number index {n} outside 0..{len(BERNOULLI) - 1}")
    return BERNOULLI[n]


# ---------------------------------------------------------------------------
# bracket kernel  1/(e^v - 1) - 1/v + 1/2
# ---------------------------------------------------------------------------

BRACKET_SWITCH = 2.0
_BRACKET_TERMS = 20
# c_k = B_2k / (2k)!, so that bracket(v) = sum_k c_k v^(2k-1) for |v| < 2 pi
_BRACKET_COEFFS = tuple(
    float(BERNOULLI[2 * k] / math.factorial(2 * k)) for k in range(1, _BRACKET_TERMS + 1)
)


def bracket_over_v_series(v):
    """``bracket(v) / v`` from the even series; tends to 1/12 as v -> 0."""
    w = v * v
    acc = 0.0 * v
    for c in reversed(_BRACKET_COEFFS):
        acc = acc * w + c
    return acc


def bracket_series(v):
    """Odd Bernoulli series of the bracket kernel; accurate for ``|v| < 2``."""
    return bracket_over_v_series(v) * v


def bracket_direct(v):
    """Closed form ``1/expm1(v) - 1/v + 1/2``; loses digits as v -> 0."""
    if isinstance(v, np.ndarray):
        return 1.0 / np.expm1(v) - 1.0 / v + 0.5
    return 1.0 / math.expm1(v) - 1.0 / v + 0.5


def bracket_kernel(v):
    """Evaluate ``1/(e^v - 1) - 1/v + 1/2`` without cancellation.

    Parameters
    ----------
    v : float
        Positive, finite argument.

    Returns
    -------
    float
        The bracket value, relative error at the 1e-15 level for every v.
        Below ``BRACKET_SWITCH`` the even Bernoulli series is summed; above
        it the closed form is used, written with ``exp(-v)`` so it cannot
        overflow.
    """
    v = float(v)
    if not math.isfinite(v) or v <= 0.0:
        raise DomainError(f"bracket_kernel needs a finite v > 0, got {v!r}")
    if v < BRACKET_SWITCH:
        return bracket_series(v)
    em = math.exp(-v)
    return em / (-math.expm1(-v)) - 1.0 / v + 0.5


def bracket_kernel_array(v):
    """Vectorised ``bracket_kernel`` for quadrature nodes (no domain checks)."""
    v = np.asarray(v, dtype=float)
    small = v < BRACKET_SWITCH
    out = np.empty_like(v)
    out[small] = bracket_series(v[small])
    big = ~small
    vb = v[big]
    # e^{-v}/(1 - e^{-v}) never overflows
    em = np.exp(-vb)
    out[big] = em / (-np.expm1(-vb)) - 1.0 / vb + 0.5
    return out


# ---------------------------------------------------------------------------
# Gamma function
# ---------------------------------------------------------------------------

_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _near_pole(s):
    if abs(s.imag) > POLE_RADIUS or s.real > POLE_RADIUS:
        return False
    return abs(s.real - round(s.real)) <= POLE_RADIUS


def sinpi(z):
    """``sin(pi z)`` with the integer part of Re z removed first."""
    z = complex(z)
    n = round(z.real)
    val = cmath.sin(math.pi * complex(z.real - n, z.imag))
    return -val if n % 2 else val


def _log_gamma_lanczos(z):
    # valid for Re z >= 0.5
    z = z - 1.0
    x = _LANCZOS_COEFFS[0]
    for i in range(1, len(_LANCZOS_COEFFS)):
        x += _LANCZOS_COEFFS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


_STIRLING_MIN = 10.0
_STIRLING_COEFFS = tuple(
    float(BERNOULLI[2 * k] / (2 * k * (2 * k - 1))) for k in range(1, 13)
)


def _log_gamma_stirling(z):
    # |z| >= 10, Re z >= 0.5; twelve terms leave a remainder below 1e-20
    r = 1.0 / z
    r2 = r * r
    acc = 0j
    for c in reversed(_STIRLING_COEFFS):
        acc = acc * r2 + c
    return (z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI + acc * r


def _log_gamma_right(z):
    if abs(z) >= _STIRLING_MIN:
        return _log_gamma_stirling(z)
    return _log_gamma_lanczos(z)


def log_gamma(s):
    """Log-gamma on the branch continuous from the positive real axis.

    Raises
    ------
    PoleError
        If ``s`` is within 1e-14 of a nonpositive integer.
    """
    s = complex(s)
    if _near_pole(s):
        raise PoleError(f"log_gamma has a pole at s = {s}")
    if s.real >= 0.5:
        return _log_gamma_right(s)
    n = math.ceil(0.5 - s.real)
    shift = 0j
    for k in range(n):
        shift += cmath.log(s + k)
    return _log_gamma_right(s + n) - shift


def gamma(s):
    """Complex Gamma function; reflection formula for ``Re s < 0.5``."""
    s = complex(s)
    if _near_pole(s):
        raise PoleError(f"gamma has a pole at s = {s}")
    if s.real < 0.5:
        return math.pi / (sinpi(s) * cmath.exp(_log_gamma_right(1.0 - s)))
    return cmath.exp(_log_gamma_right(s))


def reciprocal_gamma(s):
    """``1/Gamma(s)``, entire; exactly zero at the nonpositive integers."""
    s = complex(s)
    if _near_pole(s):
        return 0j
    if s.real < 0.5:
        return sinpi(s) * cmath.exp(_log_gamma_right(1.0 - s)) / math.pi
    return cmath.exp(-_log_gamma_right(s))


def pos_pow(base, expo):
    """``base**expo`` for real ``base > 0`` via the real logarithm.

    Real exponents use float power; complex ones use ``exp(expo * ln base)``
    so no complex logarithm (and no branch choice) is ever involved.
    """
    expo = complex(expo)
    if expo.imag == 0.0:
        return complex(base**expo.real)
    return cmath.exp(expo * math.log(base))
