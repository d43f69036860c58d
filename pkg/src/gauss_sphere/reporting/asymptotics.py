"""Empirical asymptotics of N_{3,k} - (main terms).

These reports are evidence, not verification: the windowed maxima of
|residual|/weight are reported raw and the verdicts only test the
documented stability and no-decay thresholds.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from ..errors import LabError
from ..lattice_sums import c_constant
from ..oscillatory.series import LEADING_COEFFICIENT_K1, main_terms
from ..radial_counts import SqrtRadius
from ..step_calculus import evaluator

POINTS_PER_WINDOW = 2000
PROBE_EXPONENT = 0.9
STABILITY = {1: 0.50}
DEFAULT_STABILITY = 0.25
PROBE_FRACTION = 0.5


@dataclass
class WindowStats:
    lo: float
    hi: float
    points: int
    max_weighted: float
    max_probe: float


@dataclass
class AsymptoticsReport:
    k: int
    grid: dict
    weight: str
    global_max: float
    windows: list[WindowStats] = field(default_factory=list)
    stability_ratio: float = math.nan
    stability_tolerance: float = math.nan
    stable: bool = False
    probe_ratio: float = math.nan
    probe_no_decay: bool = False
    thresholds: str = ""

    @property
    def verdict(self) -> str:
        return "pass" if self.stable else "fail"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict
        return d


def dyadic_windows(sigma_max: float, floor: float = 1.0) -> list[tuple[float, float]]:
    """[sigma_max/2, sigma_max], [sigma_max/4, sigma_max/2], ... down to ``floor``, ascending."""
    out = []
    hi = float(sigma_max)
    while hi / 2.0 >= floor:
        out.append((hi / 2.0, hi))
        hi /= 2.0
    return out[::-1]


def _grid(lo: float, hi: float, points: int) -> list[SqrtRadius]:
    """sigma^2 = lam/8 with lam evenly spaced over [8 lo^2, 8 hi^2]."""
    a, b = int(math.ceil(8 * lo * lo)), int(math.floor(8 * hi * hi))
    step = max(1, (b - a) // points)
    return [SqrtRadius(lam, 8) for lam in range(a, b + 1, step)]


def residual(k: int, radius: SqrtRadius) -> float:
    """N_{3,k} minus every main term (for k >= 2 this is o_k)."""
    ev = evaluator(float(radius.sigma2))
    exact = ev.eval_exact(k, radius)
    s = radius.sigma
    if k == 1:
        return exact - LEADING_COEFFICIENT_K1 * s**4 - c_constant(0).value
    return exact - main_terms(k, s).value


def weight(k: int, s: float) -> float:
    return s * math.log(2.0 + s) if k == 1 else s


def asymptotics_report(
    k: int, sigma_max: float, points_per_window: int = POINTS_PER_WINDOW
) -> AsymptoticsReport:
    if not 1 <= k <= 5:
        raise LabError("k must lie in 1..5")
    if sigma_max < 2.0:
        raise LabError("sigma_max must be at least 2 (one dyadic window)")
    evaluator(sigma_max * sigma_max)
    windows = []
    for lo, hi in dyadic_windows(sigma_max):
        grid = _grid(lo, hi, points_per_window)
        res = np.array([residual(k, r) for r in grid])
        s = np.array([r.sigma for r in grid])
        w = np.array([weight(k, x) for x in s])
        windows.append(
            WindowStats(
                lo,
                hi,
                len(grid),
                float(np.max(np.abs(res) / w)),
                float(np.max(np.abs(res) / s**PROBE_EXPONENT)),
            )
        )
    tol = STABILITY.get(k, DEFAULT_STABILITY)
    report = AsymptoticsReport(
        k=k,
        grid={
            "sigma_max": sigma_max,
            "points_per_window": points_per_window,
            "spacing": "sigma^2 in (1/8)Z",
        },
        weight="sigma*log(2+sigma)" if k == 1 else "sigma",
        global_max=max(w.max_weighted for w in windows),
        windows=windows,
        stability_tolerance=tol,
        thresholds=(
            f"stable: last/previous window max within +-{tol:.0%}; "
            f"probe: last-window max |res|/sigma^{PROBE_EXPONENT} >= "
            f"{PROBE_FRACTION} x global max (evidence only)"
        ),
    )
    if len(windows) >= 2:
        report.stability_ratio = windows[-1].max_weighted / windows[-2].max_weighted
        report.stable = abs(report.stability_ratio - 1.0) <= tol
    probe_max = max(w.max_probe for w in windows)
    report.probe_ratio = windows[-1].max_probe / probe_max
    report.probe_no_decay = report.probe_ratio >= PROBE_FRACTION
    return report
