"""Bessel functions needed by the radial Poisson summation.

Half-integer orders come from their trigonometric closed forms. J_0 and J_1
use an ascending power series for z <= 25 and the Hankel asymptotic
expansion above it. The ascending series alternates with terms up to ~e^z
times the result, so it is summed in 256-bit fixed point; double precision
would lose ten digits at the seam.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..errors import LabError

SERIES_TERMS = 60
HANKEL_TERMS = 8
SEAM = 25.0
_FIXED_BITS = 256


def bessel_half(two_nu: int, z):
    """J_{nu}(z) for nu = two_nu/2 in {-1/2, 1/2, 3/2, 5/2}, z > 0."""
    z = np.asarray(z, dtype=np.float64)
    if np.any(z <= 0):
        raise LabError("half-integer Bessel closed forms need z > 0")
    amp = np.sqrt(2.0 / (np.pi * z))
    s, c = np.sin(z), np.cos(z)
    if two_nu == -1:
        out = amp * c
    elif two_nu == 1:
        out = amp * s
    elif two_nu == 3:
        out = amp * (-c + s / z)
    elif two_nu == 5:
        # J_{5/2} = (3/z) J_{3/2} - J_{1/2}
        out = (3.0 / z) * amp * (-c + s / z) - amp * s
    else:
        raise LabError(f"two_nu must be one of -1, 1, 3, 5; got {two_nu}")
    return out[()] if out.ndim == 0 else out


def _fixed_series(order: int, z: float) -> float:
    """Ascending series of J_0 or J_1 at a single point, exact to ~2^-200."""
    one = 1 << _FIXED_BITS
    half = Fraction(z) / 2
    x = half * half
    x_fixed = (x.numerator << _FIXED_BITS) // x.denominator
    term = one  # for order 1 the (z/2) prefactor is applied after summation
    total = 0
    for m in range(SERIES_TERMS):
        total += term
        # next term: * (-x) / ((m+1)(m+1+order))
        term = -(((term * x_fixed) >> _FIXED_BITS) // ((m + 1) * (m + 1 + order)))
    value = Fraction(total, one)
    if order == 1:
        value *= half
    return float(value)


def _hankel(order: int, z: np.ndarray) -> np.ndarray:
    mu = 4.0 * order * order
    p = np.ones_like(z)
    q = np.zeros_like(z)
    a = 1.0
    # a_k(nu) = prod_{j<=k} (mu - (2j-1)^2) / (k! 8^k)
    for k in range(1, 2 * HANKEL_TERMS):
        a *= (mu - (2 * k - 1) ** 2) / (k * 8.0)
        t = a / z**k
        if k % 2 == 0:
            p += (-1) ** (k // 2) * t
        else:
            q += (-1) ** ((k - 1) // 2) * t
    chi = z - (order / 2.0 + 0.25) * np.pi
    return np.sqrt(2.0 / (np.pi * z)) * (p * np.cos(chi) - q * np.sin(chi))


def _integer_order(order: int, z, method: str | None):
    z = np.asarray(z, dtype=np.float64)
    if np.any(z < 0):
        raise LabError("integer-order Bessel evaluation needs z >= 0")
    flat = z.ravel()
    out = np.empty_like(flat)
    if method == "series":
        small = np.ones(flat.shape, dtype=bool)
    elif method == "hankel":
        small = np.zeros(flat.shape, dtype=bool)
    else:
        small = flat <= SEAM
    for i in np.flatnonzero(small):
        out[i] = _fixed_series(order, float(flat[i]))
    big = ~small
    if big.any():
        out[big] = _hankel(order, flat[big])
    out = out.reshape(z.shape)
    return out[()] if out.ndim == 0 else out


def bessel_J1(z, method: str | None = None):
    """J_1(z), z >= 0. ``method`` forces "series" or "hankel" for seam checks."""
    return _integer_order(1, z, method)


def bessel_J0(z, method: str | None = None):
    return _integer_order(0, z, method)


def bessel_J(two_nu: int, z):
    """Dispatch J_{two_nu/2} over the orders used by the d = 1, 2, 3 identities."""
    if two_nu == 0:
        return bessel_J0(z)
    if two_nu == 2:
        return bessel_J1(z)
    return bessel_half(two_nu, z)


def seam_agreement(order: int = 1, points=(SEAM - 1e-9, SEAM, SEAM + 1e-9, 24.0, 26.0)):
    """Largest relative series/Hankel disagreement over ``points``."""
    worst = 0.0
    for z in points:
        s = float(_integer_order(order, z, "series"))
        h = float(_integer_order(order, z, "hankel"))
        worst = max(worst, abs(s - h) / max(abs(s), 1e-300))
    return worst
