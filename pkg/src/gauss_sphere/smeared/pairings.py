"""Pairings of the counting data with bump functions, and the smeared
Poisson-summation identities for d = 1, 2, 3.

For a radial test function the Poisson summation formula gives, after
pairing with chi,

    sum_n r_d(n) chi(sqrt n) = A_d int chi(r) r^(d-1) dr
        + sum_{n>=1} r_d(n) int chi(S) 2pi S^(d/2) n^(-nu/2) J_nu(2pi sqrt(n) S) dS

with nu = d/2 - 1 and A_d the area of the unit sphere, and

    int chi N_d = V_d int chi(S) S^d dS
        + sum_{n>=1} r_d(n) n^(-d/4) int chi(S) S^(d/2) J_{d/2}(2pi sqrt(n) S) dS.

The series are truncated at N, 2N, 4N and the tail estimated by Richardson
extrapolation of the three partial sums.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from ..errors import LabError, OutOfTableError, RichardsonError
from ..oscillatory.bessel import bessel_J
from ..radial_counts import RadialCountTable, get_table
from ..summation import compensated_sum
from .bump import BumpFunction
from . import quadrature

SPHERE_AREA = {1: 2.0, 2: 2.0 * math.pi, 3: 4.0 * math.pi}
BALL_VOLUME = {1: 2.0, 2: math.pi, 3: 4.0 * math.pi / 3.0}
SLACK = 1e-8
N_CHUNK = 512
PERIODS_PER_PANEL = 2.0


@dataclass
class PairingReport:
    lhs: complex | float
    rhs: complex | float
    rhs_bound: float
    quad_error: float
    n_terms: int
    verdict: str
    margin: float
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def discrepancy(self) -> float:
        return abs(self.lhs - self.rhs)

    def to_dict(self) -> dict:
        def plain(v):
            if isinstance(v, complex):
                return [v.real, v.imag]
            if isinstance(v, dict):
                return {k: plain(x) for k, x in v.items()}
            if isinstance(v, (list, tuple)):
                return [plain(x) for x in v]
            if isinstance(v, np.generic):
                return v.item()
            return v

        return plain(asdict(self))


def judge(lhs, rhs, rhs_bound, quad_error, scale, n_terms, detail) -> PairingReport:
    allowed = rhs_bound + quad_error + SLACK * scale
    margin = allowed - abs(lhs - rhs)
    detail = dict(detail, scale=scale, allowed=allowed)
    return PairingReport(
        lhs, rhs, rhs_bound, quad_error, n_terms, "pass" if margin >= 0 else "fail", margin, detail
    )


def _table_for(d: int, n: int, table: RadialCountTable | None) -> RadialCountTable:
    if table is None:
        return get_table(d, n)
    if table.max_n < n:
        raise OutOfTableError(f"need r_{d}(n) up to {n}, table stops at {table.max_n}")
    return table


def counting_values(table: RadialCountTable, k: int, x: np.ndarray) -> np.ndarray:
    """N_{d,k}(x) at float points x that are not lattice radii."""
    x = np.asarray(x, dtype=np.float64)
    top = int(np.floor(np.max(x) ** 2)) if x.size else 0
    if top > table.max_n:
        raise OutOfTableError(f"support reaches n={top}, table stops at {table.max_n}")
    if k == 0:
        idx = np.floor(x * x).astype(np.int64)
        return table.cumulative[idx].astype(np.float64)
    shells = np.flatnonzero(table.counts[: top + 1])
    roots = np.sqrt(shells.astype(np.float64))
    gaps = np.clip(x[:, None] - roots[None, :], 0.0, None)
    return (gaps**k) @ table.counts[shells].astype(np.float64) / math.factorial(k)


def pair_counting(
    table: RadialCountTable, k: int, bump: BumpFunction, with_error: bool = False
):
    """int chi(S) N_{d,k}(S) dS, with panels split at every lattice radius in the support."""
    if not 0 <= k <= 4:
        raise LabError("k must lie in 0..4")
    top = int(math.floor(bump.b**2))
    if top > table.max_n:
        raise OutOfTableError(f"support reaches n={top}, table stops at {table.max_n}")
    lo = int(math.ceil(bump.a**2))
    n = np.arange(lo, top + 1)
    radii = np.sqrt(n[table.counts[n] > 0].astype(np.float64))
    value, err = bump.integrate(lambda s: counting_values(table, k, s), extra=radii)
    return (value, err) if with_error else value


def _lhs_delta(table: RadialCountTable, bump: BumpFunction) -> float:
    lo, hi = int(math.ceil(bump.a**2)), int(math.floor(bump.b**2))
    if hi > table.max_n:
        raise OutOfTableError(f"support reaches n={hi}, table stops at {table.max_n}")
    n = np.arange(lo, hi + 1)
    n = n[table.counts[n] > 0]
    if n.size == 0:
        return 0.0
    return math.fsum((table.counts[n] * bump(np.sqrt(n.astype(np.float64)))).tolist())


def delta_kernel(d: int, n: np.ndarray, s: np.ndarray) -> np.ndarray:
    """2pi S^(d/2) n^(-nu/2) J_nu(2pi sqrt(n) S), nu = d/2 - 1; rows n, columns S."""
    nu = d / 2.0 - 1.0
    n = np.asarray(n, dtype=np.float64)[:, None]
    z = 2.0 * math.pi * np.sqrt(n) * s[None, :]
    return 2.0 * math.pi * s[None, :] ** (d / 2.0) * n ** (-nu / 2.0) * bessel_J(d - 2, z)


def nd_kernel(d: int, n: np.ndarray, s: np.ndarray) -> np.ndarray:
    """n^(-d/4) S^(d/2) J_{d/2}(2pi sqrt(n) S); rows n, columns S."""
    n = np.asarray(n, dtype=np.float64)[:, None]
    z = 2.0 * math.pi * np.sqrt(n) * s[None, :]
    return n ** (-d / 4.0) * s[None, :] ** (d / 2.0) * bessel_J(d, z)


def smeared_terms(table, bump: BumpFunction, n_max: int, kernel) -> tuple[np.ndarray, np.ndarray, float]:
    """(n, r_d(n) int chi K_n, quadrature error) for the shells 1 <= n <= n_max."""
    n_all = np.flatnonzero(table.counts[1 : n_max + 1]) + 1
    values = np.empty(n_all.size)
    err = 0.0
    for start in range(0, n_all.size, N_CHUNK):
        n = n_all[start : start + N_CHUNK]
        period = 1.0 / math.sqrt(float(n[-1]))
        br = bump.breaks(max_width=PERIODS_PER_PANEL * period)
        x32, w32 = quadrature.nodes(br, quadrature.LOW)
        x64, w64 = quadrature.nodes(br, quadrature.HIGH)
        r = table.counts[n].astype(np.float64)
        v32 = r * (kernel(n, x32) @ (w32 * bump(x32)))
        v64 = r * (kernel(n, x64) @ (w64 * bump(x64)))
        values[start : start + n.size] = v64
        err += float(np.sum(np.abs(v64 - v32)))
    return n_all, values, err


def partial_sums(n: np.ndarray, values: np.ndarray, cutoffs) -> list[float]:
    return [compensated_sum(values[n <= c]) for c in cutoffs]


def richardson(s1: float, s2: float, s4: float, floor: float) -> tuple[float, float, float]:
    """(extrapolated limit, tail-estimate bound, contraction ratio) from S_N, S_2N, S_4N."""
    d1, d2 = s2 - s1, s4 - s2
    if abs(d2) <= floor:
        return s4, max(abs(d2), floor), 0.0
    rho = d2 / d1 if d1 != 0.0 else math.inf
    if not abs(rho) < 0.9:
        raise RichardsonError(
            f"partial sums do not contract: S_N={s1!r}, S_2N={s2!r}, S_4N={s4!r}"
        )
    tail = d2 * rho / (1.0 - rho)
    return s4 + tail, abs(d2) / (1.0 - abs(rho)), rho


def _identity_report(d, bump, n_terms, table, kind) -> PairingReport:
    if d not in (1, 2, 3):
        raise LabError("d must be 1, 2 or 3")
    if n_terms < 1:
        raise LabError("n_terms must be >= 1")
    table = _table_for(d, max(4 * n_terms, int(math.floor(bump.b**2))), table)
    if kind == "delta":
        lhs = _lhs_delta(table, bump)
        main, main_err = bump.integrate(lambda s: SPHERE_AREA[d] * s ** (d - 1))
        lhs_err = 0.0
        kernel = lambda n, s: delta_kernel(d, n, s)  # noqa: E731
    else:
        lhs, lhs_err = pair_counting(table, 0, bump, with_error=True)
        main, main_err = bump.integrate(lambda s: BALL_VOLUME[d] * s**d)
        kernel = lambda n, s: nd_kernel(d, n, s)  # noqa: E731
    n, values, series_err = smeared_terms(table, bump, 4 * n_terms, kernel)
    cut = (n_terms, 2 * n_terms, 4 * n_terms)
    s1, s2, s4 = partial_sums(n, values, cut)
    quad_error = lhs_err + main_err + series_err
    scale = max(abs(lhs), abs(main), float(np.sum(np.abs(values))), 1e-300)
    limit, tail_bound, rho = richardson(s1, s2, s4, 1e-14 * scale + series_err)
    rhs = main + limit
    detail = {
        "kind": kind,
        "dimension": d,
        "support": [bump.a, bump.b],
        "partial_sums": [main + s for s in (s1, s2, s4)],
        "residuals": [abs(lhs - main - s) for s in (s1, s2, s4)],
        "cutoffs": list(cut),
        "contraction": rho,
        "norms": list(bump.norms()),
    }
    return judge(lhs, rhs, tail_bound, quad_error, scale, n_terms, detail)


def verify_delta_identity(
    d: int, bump: BumpFunction, n_terms: int, table: RadialCountTable | None = None
) -> PairingReport:
    return _identity_report(d, bump, n_terms, table, "delta")


def verify_Nd_identity(
    d: int, bump: BumpFunction, n_terms: int, table: RadialCountTable | None = None
) -> PairingReport:
    return _identity_report(d, bump, n_terms, table, "nd")


def identity_residuals(
    kind: str, d: int, bump: BumpFunction, cutoffs, table: RadialCountTable | None = None
) -> list[float]:
    """|lhs - rhs_N| for each N in ``cutoffs`` (no extrapolation)."""
    cutoffs = sorted(int(c) for c in cutoffs)
    table = _table_for(d, max(cutoffs[-1], int(math.floor(bump.b**2))), table)
    if kind == "delta":
        lhs = _lhs_delta(table, bump)
        main = bump.integrate(lambda s: SPHERE_AREA[d] * s ** (d - 1))[0]
        kernel = lambda n, s: delta_kernel(d, n, s)  # noqa: E731
    elif kind == "nd":
        lhs = pair_counting(table, 0, bump)
        main = bump.integrate(lambda s: BALL_VOLUME[d] * s**d)[0]
        kernel = lambda n, s: nd_kernel(d, n, s)  # noqa: E731
    else:
        raise LabError("kind must be 'delta' or 'nd'")
    n, values, _ = smeared_terms(table, bump, cutoffs[-1], kernel)
    return [abs(lhs - main - s) for s in partial_sums(n, values, cutoffs)]


def trig_form_term(n, sigma):
    """-(1/(pi n)) [S cos(2pi sqrt(n) S) - sin(2pi sqrt(n) S)/(2pi sqrt n)]."""
    n = np.asarray(n, dtype=np.float64)
    a = 2.0 * math.pi * np.sqrt(n)
    return -(sigma * np.cos(a * sigma) - np.sin(a * sigma) / a) / (math.pi * n)


def bessel_form_term(n, sigma):
    """S^(3/2) n^(-3/4) J_{3/2}(2pi sqrt(n) S)."""
    n = np.asarray(n, dtype=np.float64)
    return sigma**1.5 * n**-0.75 * bessel_J(3, 2.0 * math.pi * np.sqrt(n) * sigma)


def termwise_identity_error(n_max: int = 100, sigmas=(0.3, 1.0, 2.5, 7.1, 14.0)) -> float:
    """Largest relative gap between the two forms of the d=3 series term."""
    n = np.arange(1, n_max + 1)
    worst = 0.0
    for s in sigmas:
        t, b = trig_form_term(n, s), bessel_form_term(n, s)
        scale = np.maximum(np.abs(t), (s + 1.0) / (math.pi * n) * 1e-3)
        worst = max(worst, float(np.max(np.abs(t - b) / scale)))
    return worst
