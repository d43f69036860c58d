"""Acceptance criteria 1-10 and module invariants, shared by the test-suite
and the ``suite`` subcommand."""

from __future__ import annotations

import math
import random
import time
import traceback
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .. import oracles
from ..errors import LabError
from ..lattice_sums import (
    c0_matches_proof_constant,
    c_consistency_check,
    c_constant_direct,
    c_constant_ewald,
    epstein_zeta,
)
from ..oscillatory.bessel import seam_agreement
from ..oscillatory.coefficients import (
    block_power,
    flipped_beta_quadruple,
    matrix_power,
    matrix_power_naive,
    q_polynomial,
    q_polynomial_by_recursion,
    quadruple,
)
from ..oscillatory.series import LEADING_COEFFICIENT_K4, eval_ok, leading_coefficient, main_formula
from ..radial_counts import (
    SqrtRadius,
    build_table,
    count_N,
    enumerate_ball_counts,
    gauss_lower,
    gauss_upper,
    get_table,
    tail_interval,
)
from ..smeared.bump import make_bump
from ..smeared.fourier import fourier_check
from ..smeared.pairings import identity_residuals, pair_counting, termwise_identity_error
from ..step_calculus import eval_exact, eval_quadrature, evaluator
from .asymptotics import asymptotics_report
from .figure import amplitude_ratio, figure_pipeline

PROFILES = {
    "quick": {
        "series_terms": 10**4,
        "figure_terms": 10**4,
        "fourier_terms": 10**4,
        "nd_cutoffs": (1000, 2000, 4000, 8000),
        "enforce_limits": True,
    },
    "full": {
        "series_terms": 10**5,
        "figure_terms": 10**5,
        "fourier_terms": 10**5,
        "nd_cutoffs": (1000, 2000, 4000, 8000, 16000),
        "enforce_limits": False,
        "max_n": 10**6,
    },
}

SERIES_GRID = tuple(range(80, 1601, 80))  # sigma^2 = lam/8, 20 points up to sqrt(200)


@dataclass
class CriterionResult:
    ident: str
    title: str
    passed: bool
    elapsed: float
    limit: float | None
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        limit = f" (limit {self.limit:g} s)" if self.limit else ""
        return f"[{status}] {self.ident}: {self.title} [{self.elapsed:.2f} s{limit}]"


def _run(ident, title, limit, fn, enforce=True) -> CriterionResult:
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure with its traceback attached
        ok, detail = False, {"error": repr(exc), "traceback": traceback.format_exc()}
    elapsed = time.perf_counter() - start
    if enforce and limit is not None and elapsed >= limit:
        detail = dict(detail, runtime_exceeded=True)
        ok = False
    return CriterionResult(ident, title, bool(ok), elapsed, limit, detail)


# -- criteria ---------------------------------------------------------------


def counting_ground_truth():
    brute = enumerate_ball_counts(3, 5000)
    table = build_table(3, 5000)
    mismatches = np.flatnonzero(brute != table.counts)
    n2 = count_N(table, SqrtRadius(2))
    n1 = count_N(table, SqrtRadius(1))
    oracle = (oracles.brute_force_count(3, Fraction(2)), oracles.brute_force_count(3, Fraction(1)))
    ok = mismatches.size == 0 and (n2, n1) == (19, 7) == oracle
    return ok, {"mismatches": mismatches[:10].tolist(), "N3(sqrt2)": n2, "N3(1)": n1}


def oracle_equivalence(seed: int = 20240611):
    rng = random.Random(seed)
    evaluator(400.0)
    worst = 0.0
    for _ in range(50):
        q = rng.randint(1, 64)
        radius = SqrtRadius(rng.randint(0, 400 * q), q)
        for k in range(1, 5):
            exact = eval_exact(k, radius)
            quad = eval_quadrature(k, radius, tol=1e-10)
            worst = max(worst, abs(exact - quad) / (1e-8 * (1.0 + abs(exact))))
    return worst <= 1.0, {"worst_ratio_to_tolerance": worst}


def recursion_suite():
    bad = []
    for k in range(9):
        if oracles.oracle_quadruple(k) != quadruple(k):
            bad.append(("quadruple-vs-antiderivative", k))
        if oracles.oracle_q_polynomial(k) != q_polynomial(k):
            bad.append(("Q-vs-antiderivative", k))
    for k in range(65):
        if not (matrix_power_naive(k) == block_power(k) == matrix_power(k)):
            bad.append(("block-power", k))
    for k in range(33):
        if q_polynomial(k) != q_polynomial_by_recursion(k):
            bad.append(("Q-recursion", k))
    return not bad, {"failures": bad}


def series_vs_exact(n_terms: int = 10**4, quadruple_fn=quadruple, ks=(2, 3, 4, 5)):
    evaluator(200.0)
    failures = []
    worst = {}
    for k in ks:
        for lam in SERIES_GRID:
            radius = SqrtRadius(lam, 8)
            mf = main_formula(k, radius, n_terms, quadruple_fn)
            exact = eval_exact(k, radius)
            err = abs(mf.value - exact)
            contained = err <= mf.bound
            tight = k < 3 or mf.bound <= 1e-3 * (1.0 + radius.sigma)
            worst[k] = max(worst.get(k, 0.0), err / mf.bound)
            if not (contained and tight):
                failures.append({"k": k, "sigma2": f"{lam}/8", "error": err, "bound": mf.bound})
    return not failures, {"worst_error_over_bound": worst, "failures": failures[:10]}


def figure_reproduction(n_terms: int = 10**4):
    checks = []
    rows = figure_pipeline(1600, n_terms, checks=checks)
    ratio = amplitude_ratio(rows)
    literal = Fraction(8, math.factorial(7)) == Fraction(1, 630) and math.isclose(
        leading_coefficient(4), LEADING_COEFFICIENT_K4, rel_tol=4 * np.finfo(float).eps
    )
    ok = len(rows) == 1600 and literal and 1.2 <= ratio <= 4.0
    return ok, {
        "rows": len(rows),
        "checked_rows": len(checks),
        "worst_check_ratio": max(c.discrepancy / c.bound for c in checks),
        "amplitude_ratio": ratio,
    }


def constants_containment():
    e0, e2 = c_constant_ewald(0, 1e-9), c_constant_ewald(2, 1e-9)
    d0, d2 = c_constant_direct(0, 10**6), c_constant_direct(2, 10**5)
    ok = d0.contains(e0.value) and d2.contains(e2.value)
    return ok, {
        "C0": [e0.value, d0.value, d0.bound],
        "C2": [e2.value, d2.value, d2.bound],
    }


def smeared_identities(cutoffs=(1000, 2000, 4000, 8000)):
    table = get_table(3, 51)
    worst = 0.0
    for n in range(51):
        bump = make_bump(math.sqrt(n), math.sqrt(n + 1))
        got = pair_counting(table, 0, bump)
        want = int(table.cumulative[n])
        worst = max(worst, abs(got - want) / (1e-12 * want))
    decreasing = {}
    ok = worst <= 1.0
    for d, (a, b) in ((1, (1.45, 1.7)), (3, (0.9, 1.1))):
        bump = make_bump(a, b)
        res = identity_residuals("nd", d, bump, cutoffs)
        floor = 1e-13 * max(1.0, pair_counting(get_table(d, 4), 0, bump))
        steps = [res[i + 1] <= 0.75 * res[i] + floor for i in range(len(res) - 1)]
        decreasing[d] = {"residuals": res, "contracting": steps}
        ok = ok and all(steps)
    return ok, {"point_value_worst_ratio": worst, "nd_residuals": decreasing}


def fourier_side(n_terms: int = 10**4):
    report = fourier_check(1.0, 0.2, n_terms, 60.0)
    rel = report.detail["relative_discrepancy"]
    return report.passed and rel <= 1e-3, {"relative_discrepancy": rel, "margin": report.margin}


def asymptotics():
    r1 = asymptotics_report(1, 200.0)
    r2 = asymptotics_report(2, 100.0)
    ok = r1.stable and r2.stable
    return ok, {
        "k1_ratio": r1.stability_ratio,
        "k1_windows": [w.max_weighted for w in r1.windows],
        "k1_probe_no_decay": r1.probe_no_decay,
        "k2_ratio": r2.stability_ratio,
        "k2_windows": [w.max_weighted for w in r2.windows],
    }


def flipped_beta_regression(n_terms: int = 10**4):
    flipped_ok, flipped = series_vs_exact(n_terms, flipped_beta_quadruple, ks=(3,))
    shipped_ok, _ = series_vs_exact(n_terms, quadruple, ks=(3,))
    return (not flipped_ok) and shipped_ok, {
        "flipped_beta_failures_at_k3": len(flipped["failures"]),
        "shipped_passes": shipped_ok,
    }


# -- module invariants ------------------------------------------------------


def invariant_checks(max_n: int = 4 * 10**4) -> list[tuple[str, Callable]]:
    def counts_structure():
        t = get_table(3, max_n)
        x = np.arange(3, t.max_n + 1)
        sandwich = np.all(gauss_lower(x) <= t.cumulative[3:]) and np.all(
            t.cumulative[3:] <= gauss_upper(x)
        )
        parity = np.all(t.counts[1:] % 2 == 0)
        d1 = build_table(1, 100)
        return bool(sandwich and parity and t.counts[0] == 1 and d1.counts[49] == 2), {}

    def monotone_and_continuous():
        ev = evaluator(400.0)
        radii = [SqrtRadius(j, 4) for j in range(0, 1600, 37)]
        ok = True
        for k in range(5):
            vals = ev.eval_exact_many(k, radii)
            ok &= bool(np.all(np.diff(vals) >= 0))
        for n in (4, 9, 50):
            for k in range(1, 5):
                h = 1e-6
                below = ev.eval_exact(k, SqrtRadius.from_fraction(Fraction(math.sqrt(n) - h) ** 2))
                at = ev.eval_exact(k, SqrtRadius(n))
                # slope of N_{3,k} is N_{3,k-1}
                ok &= abs(at - below) <= ev.eval_exact(k - 1, SqrtRadius(n)) * h * 1.01 + 1e-12
        ok &= all(ev.eval_exact(k, SqrtRadius(0)) == 0 for k in range(1, 17))
        return ok, {}

    def tail_monotone():
        bounds = [eval_ok(3, 5.0, n).bound for n in (1000, 2000, 4000, 8000, 16000)]
        return all(b2 <= b1 for b1, b2 in zip(bounds, bounds[1:])), {"bounds": bounds}

    def constants_structure():
        ok = all(c_consistency_check(j) for j in (0, 2, 4, 6, 8)) and c0_matches_proof_constant()
        z = [epstein_zeta(2, t)[0] for t in (0.5, 1.0, 2.0)]
        ok &= max(z) - min(z) <= 1e-12
        ok &= z[1] > 6 + 12 / 4 + 8 / 9
        b1 = c_constant_direct(2, 10**4).bound
        b2 = c_constant_direct(2, 2 * 10**4).bound
        ok &= b2 / b1 <= 2**-1.5 + 0.05
        ok &= c_constant_direct(2, 10**4).bound <= 1e-5 * abs(c_constant_ewald(2).value)
        t = get_table(3, 10**6)
        lo, hi = tail_interval(t, 10**4, 3.0)
        n = np.arange(10**4 + 1, 10**6 + 1, dtype=np.float64)
        direct = math.fsum((t.counts[10**4 + 1 :] * n**-3.0).tolist())
        ok &= lo <= direct <= hi
        return ok, {"zeta2_t_spread": max(z) - min(z), "bound_ratio": b2 / b1}

    def bessel_and_bumps():
        ok = seam_agreement(1) <= 1e-10 and seam_agreement(0) <= 1e-10
        ok &= termwise_identity_error() <= 1e-12
        bump = make_bump(0.0, 1.0, [1, 2, 3, 4])
        ok &= all(abs(m) <= 1e-12 for m in bump.residual_moments)
        t = get_table(3, 30)
        for n in (4, 9, 25):
            b = make_bump(math.sqrt(n), math.sqrt(n + 1), [1])
            want = eval_exact(1, SqrtRadius(n))
            ok &= abs(pair_counting(t, 1, b) - want) <= 1e-9 * want
        return ok, {"moments": list(bump.residual_moments)}

    def fourier_symmetry():
        a = fourier_check(1.0, 0.2, 10**4, 60.0)
        b = fourier_check(-1.0, 0.2, 10**4, 60.0)
        ok = abs(a.lhs - b.lhs.conjugate()) <= 1e-12 * abs(a.lhs)
        ok &= abs(a.rhs - b.rhs.conjugate()) <= 1e-12 * abs(a.rhs)
        ok &= fourier_check(1.0, 0.5, 10**4, 60.0).passed and fourier_check(1.0, 0.25, 10**4, 60.0).passed
        return ok, {}

    return [
        ("inv-counts", "table structure, parity and cube sandwich", counts_structure),
        ("inv-iterated", "monotone, continuous at radii, zero at origin", monotone_and_continuous),
        ("inv-tail", "o_k bound nonincreasing in n_terms", tail_monotone),
        ("inv-constants", "C_j prefactors, Ewald t-independence, tail rates", constants_structure),
        ("inv-smeared", "Bessel seam, termwise identity, bump moments", bessel_and_bumps),
        ("inv-fourier", "conjugate symmetry and eps dependence", fourier_symmetry),
    ]


CRITERIA = [
    ("1", "counting ground truth", 5.0),
    ("2", "iterated-integral oracle equivalence", 10.0),
    ("3", "recursion suite (exact)", 1.0),
    ("4", "series vs exact at desk scale", 60.0),
    ("5", "o_4 figure reproduction", 60.0),
    ("6", "C_0, C_2 containment between methods", 30.0),
    ("7", "smeared identities", 60.0),
    ("8", "Fourier-side identity", 30.0),
    ("9", "asymptotics stability", 120.0),
    ("10", "flipped-beta regression", 30.0),
]


def criterion(ident: str, profile: str = "quick", flip_beta: bool = False) -> CriterionResult:
    p = PROFILES[profile]
    qfn = flipped_beta_quadruple if flip_beta else quadruple
    fns = {
        "1": counting_ground_truth,
        "2": oracle_equivalence,
        "3": recursion_suite,
        "4": lambda: series_vs_exact(p["series_terms"], qfn),
        "5": lambda: figure_reproduction(p["figure_terms"]),
        "6": constants_containment,
        "7": lambda: smeared_identities(p["nd_cutoffs"]),
        "8": lambda: fourier_side(p["fourier_terms"]),
        "9": asymptotics,
        "10": lambda: flipped_beta_regression(p["series_terms"]),
    }
    title, limit = next((t, lim) for i, t, lim in CRITERIA if i == ident)
    return _run(ident, title, limit, fns[ident], p["enforce_limits"])


def run_suite(profile: str = "quick", flip_beta: bool = False, invariants: bool = True):
    """Run every criterion (and the module invariants); returns (exit status, summary)."""
    if profile not in PROFILES:
        raise LabError(f"unknown profile {profile!r}")
    if "max_n" in PROFILES[profile]:
        get_table(3, PROFILES[profile]["max_n"])
    results = [criterion(i, profile, flip_beta) for i, _, _ in CRITERIA]
    if invariants:
        results += [_run(i, t, None, fn) for i, t, fn in invariant_checks()]
    summary = {
        "profile": profile,
        "flip_beta": flip_beta,
        "passed": all(r.passed for r in results),
        "results": [asdict(r) for r in results],
    }
    return (0 if summary["passed"] else 1), summary
