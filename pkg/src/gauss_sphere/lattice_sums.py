"""The constants C_j = (2j+4)(2pi)^(-j-3)(-1)^(j/2) * Z(2 + j/2), j even.

Z(s) = sum_{n>=1} r_3(n) n^-s is the Epstein zeta function of the cubic
lattice. Two independent routes are offered: a direct partial sum with a
certified Abel tail interval, and Ewald (theta-splitting) summation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import LabError, OddIndexError, OutOfTableError
from .radial_counts import build_table, get_table, tail_interval
from .summation import EPS, compensated_sum, sum_budget

EWALD_SHELLS = 64  # |v| <= 8 on each side at t = 1
MIN_TARGET = 1e-14
DEFAULT_TARGET = 1e-12


@dataclass(frozen=True)
class LatticeSumConstant:
    j: int
    value: float
    bound: float
    method: str
    lattice_sum: float = math.nan
    lattice_bound: float = math.nan

    @property
    def interval(self) -> tuple[float, float]:
        return (self.value - self.bound, self.value + self.bound)

    def contains(self, x: float) -> bool:
        lo, hi = self.interval
        return lo <= x <= hi


def _check_index(j: int) -> None:
    if j < 0:
        raise LabError("j must be nonnegative")
    if j % 2:
        raise OddIndexError(f"C_{j} is identically zero (odd index)")


def prefactor(j: int) -> float:
    _check_index(j)
    sign = 1.0 if j % 4 == 0 else -1.0
    return sign * (2 * j + 4) * (2.0 * math.pi) ** (-j - 3)


def c_constant_direct(j: int, n_terms: int, table=None) -> LatticeSumConstant:
    """C_j from sum_{n <= n_terms} plus the midpoint of the certified tail interval."""
    _check_index(j)
    s = 2.0 + j / 2.0
    if table is None:
        table = get_table(3, n_terms)
    if n_terms > table.max_n:
        raise OutOfTableError(f"n_terms={n_terms} beyond table max_n={table.max_n}")
    n = np.arange(1, n_terms + 1, dtype=np.float64)
    terms = table.counts[1 : n_terms + 1] * n**-s
    partial = compensated_sum(terms)
    lo, hi = tail_interval(table, n_terms, s)
    total = partial + 0.5 * (lo + hi)
    half_width = 0.5 * (hi - lo) + sum_budget(terms) + 4 * EPS * abs(total)
    pre = prefactor(j)
    return LatticeSumConstant(
        j,
        pre * total,
        abs(pre) * half_width + 4 * EPS * abs(pre * total),
        "direct",
        total,
        half_width,
    )


@lru_cache(maxsize=None)
def _small_table():
    return build_table(3, 4 * EWALD_SHELLS)


def _gamma_upper_int(s: int, x: float) -> float:
    """Gamma(s, x) for integer s >= 1: (s-1)! e^-x sum_{k<s} x^k/k!."""
    return math.factorial(s - 1) * math.exp(-x) * sum(
        x**k / math.factorial(k) for k in range(s)
    )


def _gamma_upper_half(a: Fraction, x: float) -> float:
    """Gamma(a, x) for half-integer a <= 1/2, by downward recurrence from Gamma(1/2, x)."""
    g = math.sqrt(math.pi) * math.erfc(math.sqrt(x))
    b = Fraction(1, 2)
    while b > a:
        b -= 1
        # Gamma(b, x) = (Gamma(b+1, x) - x^b e^-x) / b
        g = (g - x ** float(b) * math.exp(-x)) / float(b)
    return g


def epstein_zeta(s: int, t: float = 1.0) -> tuple[float, float]:
    """Z(s) = sum' |v|^(-2s) over Z^3 for integer s >= 2, by Ewald splitting.

    The Mellin integral for |v|^(-2s) is split at u = pi t; the small-u part
    is moved to the dual lattice by Poisson summation of the Gaussian.
    Returns (value, largest omitted-shell estimate).
    """
    if s < 2 or int(s) != s:
        raise LabError("Ewald route implemented for integer s >= 2")
    s = int(s)
    table = _small_table()
    lam = math.pi * t
    n_real = min(int(math.ceil(EWALD_SHELLS / t)), table.max_n - 1)
    n_dual = min(int(math.ceil(EWALD_SHELLS * t)), table.max_n - 1)
    a_dual = Fraction(3, 2) - s

    real = [
        int(table.counts[n]) * n ** (-s) * _gamma_upper_int(s, lam * n)
        for n in range(1, n_real + 1)
    ]
    dual = [
        int(table.counts[m])
        * math.pi**1.5
        * (math.pi**2 * m) ** (s - 1.5)
        * _gamma_upper_half(a_dual, math.pi**2 * m / lam)
        for m in range(1, n_dual + 1)
    ]
    const = math.pi**1.5 * lam ** (s - 1.5) / (s - 1.5) - lam**s / s
    value = math.fsum(real + dual + [const]) / math.gamma(s)
    # next shell on either side bounds what was dropped (both decay like e^(-pi t n))
    n1, m1 = n_real + 1, n_dual + 1
    omitted = (2 * math.sqrt(n1) + 1) ** 2 * n1 ** (-s) * _gamma_upper_int(s, lam * n1)
    omitted += (
        (2 * math.sqrt(m1) + 1) ** 2
        * math.pi**1.5
        * (math.pi**2 * m1) ** (s - 1.5)
        * _gamma_upper_half(a_dual, math.pi**2 * m1 / lam)
    )
    return value, omitted / math.gamma(s)


@lru_cache(maxsize=None)
def c_constant_ewald(
    j: int, precision_target: float = 1e-9, t: float = 1.0
) -> LatticeSumConstant:
    _check_index(j)
    if precision_target < MIN_TARGET:
        raise LabError(
            f"precision target {precision_target:g} is below what double precision can certify"
        )
    s = 2 + j // 2
    z, omitted = epstein_zeta(s, t)
    if omitted > precision_target / 10:
        raise LabError(f"Ewald truncation {omitted:.2e} misses target {precision_target:g}")
    pre = prefactor(j)
    value = pre * z
    bound = max(precision_target, 64 * EPS * abs(value))
    return LatticeSumConstant(j, value, bound, "ewald", z, bound / abs(pre))


def c_constant(j: int) -> LatticeSumConstant:
    """Tight Ewald value used by the series formulas."""
    return c_constant_ewald(j, DEFAULT_TARGET)


def c_consistency_check(j: int) -> bool:
    """Two forms of the prefactor, 2(j+2)(2pi)^(-j-3)(-1)^(j/2) and +-(2j+4)(2pi)^(-j-3).

    Both carry the same power of pi, so agreement reduces to the rational
    factor and to the sign rule (+ for j = 0 mod 4, - for j = 2 mod 4).
    """
    _check_index(j)
    fourier_side = Fraction(2 * (j + 2)) * (-1) ** (j // 2)
    series_side = Fraction(2 * j + 4) * (1 if j % 4 == 0 else -1)
    return fourier_side == series_side


def c0_matches_proof_constant() -> bool:
    """4 (2pi)^-3 == 1 / (2 pi^3): compare the rational parts, pi^-3 on both sides."""
    return Fraction(4, 2**3) == Fraction(1, 2)
