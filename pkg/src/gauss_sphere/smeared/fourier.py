"""Damped Fourier transform of the lattice-count error term.

With z = eps + i tau,

    int_0^inf (N_3(S) - (4pi/3) S^3) e^(-zS) dS = 8pi sum_{n>=1} r_3(n) / (z^2 + 4pi^2 n)^2,

and z^2 = -(tau - i eps)^2, so the right side is the regularized
half-wave-trace series. The two sides are computed independently: the left
from the counting table by quadrature, the right from the series.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import LabError, SingularProximityError
from ..radial_counts import CUBE_HALF_DIAGONAL, get_table
from ..summation import EPS, compensated_sum_complex, sum_budget
from . import quadrature
from .pairings import PairingReport, judge

MIN_EPS = 0.05
SINGULAR_GAP = 0.1
DECAY_EXPONENT = 40.0  # shells past e^(-eps sqrt n) ~ e^-40 go to the analytic bound


def _check(tau: float, epsilon: float, R_max: float) -> None:
    if not MIN_EPS <= epsilon <= 1.0:
        raise LabError(f"epsilon must lie in [{MIN_EPS}, 1], got {epsilon}")
    if R_max <= 0:
        raise LabError("R_max must be positive")
    m = abs(tau) / (2.0 * math.pi)
    top = int(math.floor(R_max * R_max))
    for n in {max(1, int(math.floor(m * m))), int(math.floor(m * m)) + 1}:
        if n <= top and abs(abs(tau) - 2.0 * math.pi * math.sqrt(n)) < SINGULAR_GAP:
            raise SingularProximityError(
                f"tau={tau} lies within {SINGULAR_GAP} of the singular time 2pi sqrt({n})"
            )


def _cube_tail_integral(R: float, eps: float) -> float:
    """int_R^inf (rho + c)^3 e^(-eps rho) d rho, c the cube half-diagonal."""
    u = R + CUBE_HALF_DIAGONAL
    return math.exp(-eps * R) * (u**3 / eps + 3 * u**2 / eps**2 + 6 * u / eps**3 + 6 / eps**4)


def lhs_side(tau: float, epsilon: float, R_max: float):
    """(value, discarded-tail bound, quadrature error estimate, shells used)."""
    z = complex(epsilon, tau)
    top = int(math.floor(R_max * R_max))
    n_end = max(top, int(math.ceil((DECAY_EXPONENT / epsilon + R_max) ** 2)))
    table = get_table(3, n_end)

    # [0, R_max]: panels between consecutive lattice radii, N_3 constant on each
    shells = np.flatnonzero(table.counts[: top + 1])
    breaks = np.unique(np.concatenate([np.sqrt(shells.astype(np.float64)), [R_max]]))
    breaks = breaks[breaks <= R_max]
    vol = 4.0 * math.pi / 3.0

    def integrand(s):
        idx = np.floor(s * s).astype(np.int64)
        return (table.cumulative[idx] - vol * s**3) * np.exp(-z * s)

    inner, quad_err = quadrature.integrate_complex(integrand, breaks)

    # (R_max, sqrt(n_end)]: exact integration of the step function and the cubic
    #   int_R^inf N_3 e^-zS = N_3(R) e^-zR / z + sum_{n > R^2} r_3(n) e^(-z sqrt n) / z
    n = np.arange(top + 1, n_end + 1)
    n = n[table.counts[n] > 0]
    jumps = table.counts[n] * np.exp(-z * np.sqrt(n.astype(np.float64))) / z
    ez = np.exp(-z * R_max)
    step = table.cumulative[top] * ez / z
    cubic = vol * ez * (R_max**3 / z + 3 * R_max**2 / z**2 + 6 * R_max / z**3 + 6 / z**4)
    outer = compensated_sum_complex(np.concatenate([[step, -cubic], jumps]))

    # shells beyond n_end: Abel summation against the cube-covering upper bound
    far = vol * epsilon * _cube_tail_integral(math.sqrt(n_end), epsilon) / abs(z)
    fp = sum_budget(np.abs(jumps)) + 64 * EPS * abs(inner) + 8 * EPS * abs(step)
    return inner + outer, far + fp, quad_err, n_end


def _smooth_tail(z: complex, N: int) -> tuple[complex, float]:
    """int_N^inf 2pi sqrt(x) / (z^2 + 4pi^2 x)^2 dx and the Abel error bound.

    The substitution x = N/u^2 makes both integrands smooth on [0, 1].
    """
    u, w = quadrature.nodes(np.linspace(0.0, 1.0, 9), quadrature.HIGH)
    z2 = z * z
    den = z2 * u**2 + 4.0 * math.pi**2 * N
    main = np.sum(w * 4.0 * math.pi * N**1.5 / den**2)

    # |sum - main| <= |E(N) f(N)| + int_N^inf e(x) |f'(x)| dx with
    # e(x) = (4pi/3)((sqrt x + c)^3 - x^(3/2)) the sandwich deviation
    x = N / u[u > 0] ** 2
    ww = w[u > 0]
    e = (4.0 * math.pi / 3.0) * ((np.sqrt(x) + CUBE_HALF_DIAGONAL) ** 3 - x**1.5)
    fprime = 8.0 * math.pi**2 / np.abs(z2 + 4.0 * math.pi**2 * x) ** 3
    err_int = float(np.sum(ww * e * fprime * 2.0 * x / u[u > 0]))
    return complex(main), 1.01 * err_int


def rhs_side(tau: float, epsilon: float, n_terms: int):
    """(value, bound): 8pi sum_{n<=N} r_3(n)/(z^2+4pi^2 n)^2 plus the smooth-density tail."""
    z = complex(epsilon, tau)
    table = get_table(3, n_terms)
    n = np.flatnonzero(table.counts[1 : n_terms + 1]) + 1
    terms = table.counts[n] / (z * z + 4.0 * math.pi**2 * n) ** 2
    partial = compensated_sum_complex(terms)
    # Abel: sum_{n>N} r f(n) = -A(N) f(N) + int A(x) (-f'(x)) dx, with A = V + E
    f_N = 1.0 / (z * z + 4.0 * math.pi**2 * n_terms) ** 2
    E_N = float(table.cumulative[n_terms]) - (4.0 * math.pi / 3.0) * n_terms**1.5
    smooth, abel_err = _smooth_tail(z, n_terms)
    tail = smooth - E_N * f_N
    value = 8.0 * math.pi * (partial + tail)
    fp = 8.0 * math.pi * (sum_budget(np.abs(terms)) + 64 * EPS * abs(tail))
    return value, 8.0 * math.pi * abel_err + fp


def fourier_check(tau: float, epsilon: float, n_terms: int, R_max: float) -> PairingReport:
    _check(tau, epsilon, R_max)
    if n_terms < 1:
        raise LabError("n_terms must be >= 1")
    lhs, lhs_bound, quad_err, n_end = lhs_side(tau, epsilon, R_max)
    rhs, rhs_bound = rhs_side(tau, epsilon, n_terms)
    scale = max(abs(lhs), abs(rhs), 1e-300)
    detail = {
        "tau": tau,
        "epsilon": epsilon,
        "R_max": R_max,
        "lhs_tail_bound": lhs_bound,
        "lhs_shells": n_end,
        "relative_discrepancy": abs(lhs - rhs) / scale,
    }
    return judge(lhs, rhs, lhs_bound + rhs_bound, quad_err, scale, n_terms, detail)
