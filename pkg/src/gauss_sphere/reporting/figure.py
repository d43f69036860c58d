"""Data behind the o_4 figure: N_{3,4} on the grid sigma^2 = lambda/8 with the
main terms peeled off one at a time."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import CrossCheckError, LabError
from ..lattice_sums import c_constant_ewald
from ..oscillatory.series import LEADING_COEFFICIENT_K4, eval_ok
from ..radial_counts import SqrtRadius
from ..step_calculus import evaluator
from ..summation import EPS

FIGURE_TARGET = 1e-9
CHECK_EVERY = 50
MAX_LAMBDA = 10**5
COLUMNS = ("lambda", "sigma2", "N34", "residual1", "residual2", "residual3")


@dataclass(frozen=True)
class FigureRow:
    lam: int
    sigma2: Fraction
    N34: float
    residual1: float
    residual2: float
    residual3: float

    def as_tuple(self) -> tuple:
        return (self.lam, float(self.sigma2), self.N34, self.residual1, self.residual2, self.residual3)


@dataclass(frozen=True)
class CrossCheck:
    lam: int
    residual3: float
    series: float
    bound: float
    discrepancy: float


def figure_pipeline(
    lambda_max: int = 1600,
    n_terms: int = 10**4,
    check_every: int = CHECK_EVERY,
    checks: list | None = None,
) -> list[FigureRow]:
    """Rows for lambda = 1..lambda_max; every ``check_every``-th row (and the last)
    is compared with the series for o_4. ``checks`` collects the comparisons."""
    if not 1 <= lambda_max <= MAX_LAMBDA:
        raise LabError(f"lambda_max must lie in [1, {MAX_LAMBDA}]")
    c0 = c_constant_ewald(0, FIGURE_TARGET)
    c2 = c_constant_ewald(2, FIGURE_TARGET)
    ev = evaluator(lambda_max / 8.0)
    rows = []
    for lam in range(1, lambda_max + 1):
        radius = SqrtRadius(lam, 8)
        s = radius.sigma
        n34 = ev.eval_exact(4, radius)
        r1 = n34 - LEADING_COEFFICIENT_K4 * s**7
        r2 = r1 - c0.value / 6.0 * s**3
        r3 = r2 - c2.value * s
        row = FigureRow(lam, radius.sigma2, n34, r1, r2, r3)
        rows.append(row)
        if lam % check_every == 0 or lam == lambda_max:
            ok = eval_ok(4, s, n_terms)
            # exact side: constants and rounding in the peeled terms
            budget = c0.bound * s**3 / 6.0 + c2.bound * s + 32 * EPS * (abs(n34) + abs(r1) + abs(r2))
            disc = abs(r3 - ok.value)
            check = CrossCheck(lam, r3, ok.value, ok.bound + budget, disc)
            if checks is not None:
                checks.append(check)
            if disc > ok.bound + budget:
                raise CrossCheckError(
                    f"row lambda={lam}: residual3={r3!r} vs series {ok.value!r}, "
                    f"|diff|={disc:.3e} > bound {ok.bound + budget:.3e}",
                    row,
                )
    return rows


def window_max(rows, lo: int, hi: int) -> float:
    return max(abs(r.residual3) for r in rows if lo <= r.lam <= hi)


def amplitude_ratio(rows) -> float:
    """max |residual3| on lambda in [800, 1600] over the same on [200, 400]."""
    return window_max(rows, 800, 1600) / window_max(rows, 200, 400)


def amplitude_growth_ok(rows, low: float = 1.2, high: float = 4.0) -> bool:
    return low <= amplitude_ratio(rows) <= high


def format_rows(rows) -> list[list[str]]:
    return [
        [str(r.lam)] + ["%.17g" % v for v in r.as_tuple()[1:]] for r in rows
    ]


def rows_as_array(rows) -> np.ndarray:
    return np.array([r.as_tuple() for r in rows], dtype=np.float64)


def check_finite(rows) -> bool:
    return all(math.isfinite(v) for r in rows for v in r.as_tuple())
