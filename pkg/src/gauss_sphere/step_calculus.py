"""Iterated integrals N_{3,k} of the sphere counting function.

N_3 is a step function with jumps r_3(n) at sqrt(n), so the Cauchy formula for
repeated integration collapses to a finite sum:

    N_{3,k}(S) = sum_{n <= S^2} r_3(n) (S - sqrt(n))^k / k!

:meth:`IteratedEvaluator.eval_exact` evaluates that sum. The independent
oracle :meth:`IteratedEvaluator.eval_quadrature` never uses it; it marches
across the shells integrating the piecewise polynomial one gap at a time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import LabError, OutOfTableError, ToleranceError
from .radial_counts import RadialCountTable, SqrtRadius, as_radius, count_N, get_table
from .summation import EPS, compensated_sum

MAX_K = 16
MAX_QUADRATURE_K = 4


@dataclass(frozen=True, eq=False)
class IteratedEvaluator:
    table: RadialCountTable
    sqrt_n: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.table.dimension != 3:
            raise LabError("iterated integrals are defined for d=3 only")
        roots = np.sqrt(np.arange(self.table.max_n + 1, dtype=np.float64))
        roots.setflags(write=False)
        object.__setattr__(self, "sqrt_n", roots)

    @classmethod
    def for_radius(cls, sigma_max2: float) -> "IteratedEvaluator":
        return cls(get_table(3, max(int(math.ceil(sigma_max2)), 1)))

    def _check(self, sigma: SqrtRadius) -> int:
        top = sigma.floor_square()
        if top > self.table.max_n:
            raise OutOfTableError(
                f"sigma^2={sigma.sigma2} beyond table max_n={self.table.max_n}"
            )
        return top

    def gaps(self, sigma: SqrtRadius) -> tuple[np.ndarray, np.ndarray]:
        """Shell indices n <= sigma^2 with r_3(n) > 0 and the gaps sigma - sqrt(n)."""
        top = self._check(sigma)
        n = np.flatnonzero(self.table.counts[: top + 1])
        # (sigma^2 - n)/(sigma + sqrt n); the numerator is exact up to one rounding
        if max(sigma.p, sigma.q * max(top, 1)) < 2**62:
            num = (sigma.p - n * sigma.q) / sigma.q
        else:
            # huge denominators: form p - n q in Python integers, round once
            num = np.array(
                [float(Fraction(sigma.p - int(m) * sigma.q, sigma.q)) for m in n]
            )
        den = sigma.sigma + self.sqrt_n[n]
        gap = np.divide(num, den, out=np.zeros_like(num), where=den > 0)
        return n, gap

    def eval_exact(self, k: int, sigma) -> float:
        """N_{3,k}(sigma) from the finite shell sum, compensated, ascending n."""
        if not 0 <= k <= MAX_K:
            raise LabError(f"k must lie in [0, {MAX_K}], got {k}")
        sigma = as_radius(sigma)
        if k == 0:
            return float(count_N(self.table, sigma))
        n, gap = self.gaps(sigma)
        terms = self.table.counts[n] * gap**k / math.factorial(k)
        return compensated_sum(terms)

    def eval_exact_many(self, k: int, radii) -> np.ndarray:
        return np.array([self.eval_exact(k, s) for s in radii], dtype=np.float64)

    def eval_quadrature(self, k: int, sigma, tol: float = 1e-10) -> float:
        """N_{3,k}(sigma) by integrating gap by gap (oracle for eval_exact).

        Between consecutive lattice radii b < b' the whole tower
        (N_{3,0}, ..., N_{3,k}) is a polynomial in (x - b) whose Taylor
        coefficients are the tower's values at b, because N_{3,0} is constant
        there. Each step therefore integrates exactly.
        """
        if not 1 <= k <= MAX_QUADRATURE_K:
            raise LabError(f"k must lie in [1, {MAX_QUADRATURE_K}], got {k}")
        if tol < 1e-12:
            raise LabError("tol below 1e-12 is not supported")
        sigma = as_radius(sigma)
        top = self._check(sigma)
        shells = np.flatnonzero(self.table.counts[: top + 1])
        # tower[j] = N_{3,j} at the current breakpoint
        tower = [0.0] * (k + 1)
        magnitude = 0.0
        steps = 0
        for i, n in enumerate(shells):
            n = int(n)
            tower[0] += float(self.table.counts[n])
            if i + 1 < len(shells):
                m = int(shells[i + 1])
                h = (m - n) / (math.sqrt(m) + math.sqrt(n))
            else:
                h = sigma.gap_to_shell(n)
            if h == 0.0:
                continue
            tower = _taylor_shift(tower, h)
            magnitude = max(magnitude, abs(tower[k]))
            steps += 1
        value = tower[k]
        budget = (k + 4) * steps * EPS * max(magnitude, abs(value))
        if budget > tol * (1.0 + abs(value)):
            raise ToleranceError(
                f"rounding budget {budget:.3e} exceeds tol {tol:.1e} at k={k}"
            )
        return value


def _taylor_shift(tower: list[float], h: float) -> list[float]:
    """Advance (N_{3,0..k}) across a gap of width h on which N_{3,0} is constant."""
    out = [tower[0]]
    for j in range(1, len(tower)):
        acc = 0.0
        hp = 1.0
        for i in range(j + 1):
            acc += tower[j - i] * hp / math.factorial(i)
            hp *= h
        out.append(acc)
    return out


_default: IteratedEvaluator | None = None


def evaluator(sigma_max2: float = 400.0) -> IteratedEvaluator:
    """Process-wide evaluator over a shared table that covers sigma_max2."""
    global _default
    if _default is None or _default.table.max_n < sigma_max2:
        _default = IteratedEvaluator.for_radius(max(sigma_max2, 400.0))
    return _default


def eval_exact(k: int, sigma) -> float:
    sigma = as_radius(sigma)
    return evaluator(float(sigma.sigma2)).eval_exact(k, sigma)


def eval_quadrature(k: int, sigma, tol: float = 1e-10) -> float:
    sigma = as_radius(sigma)
    return evaluator(float(sigma.sigma2)).eval_quadrature(k, sigma, tol)
