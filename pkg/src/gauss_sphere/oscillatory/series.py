"""The oscillatory remainder o_k and the full main formula for N_{3,k}, k >= 2.

    N_{3,k}(S) = 8pi/(3+k)! S^(3+k) + sum_{m<k} C_{k-1-m}/m! S^m + o_k(S)

    o_k(S) = -(1/pi) sum_n r_3(n)/n (2pi sqrt n)^-k
             [alpha S cos(aS) + beta S sin(aS) + (gamma/a) cos(aS) + (delta/a) sin(aS)],
    a = 2pi sqrt(n), with (alpha, beta, gamma, delta) = quadruple(k).

Every result is a :class:`BoundedValue`; the bound is a rigorous tail
estimate plus a floating-point budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import LabError
from ..lattice_sums import c_constant
from ..radial_counts import SqrtRadius, get_table, tail_interval
from ..summation import EPS, compensated_sum, sum_budget
from .coefficients import CoefficientQuadruple, quadruple

LEADING_COEFFICIENT_K1 = math.pi / 3
LEADING_COEFFICIENT_K4 = math.pi / 630


@dataclass(frozen=True)
class BoundedValue:
    value: float
    bound: float
    terms_used: int

    def contains(self, x: float) -> bool:
        return abs(x - self.value) <= self.bound


def leading_coefficient(k: int) -> float:
    """8pi/(3+k)!; k=0 gives 4pi/3, k=1 gives pi/3, k=4 gives pi/630."""
    return 8.0 * math.pi / math.factorial(3 + k)


def _as_sigma(sigma) -> float:
    if isinstance(sigma, SqrtRadius):
        return sigma.sigma
    sigma = float(sigma)
    if not (sigma >= 0.0 and math.isfinite(sigma)):
        raise LabError(f"sigma must be a finite nonnegative real, got {sigma!r}")
    return sigma


def _check(k: int, n_terms: int) -> None:
    if k < 2:
        raise LabError(
            f"k={k}: the pointwise series converges absolutely only for k >= 2; "
            "use eval_exact for k = 0, 1"
        )
    if n_terms < 1:
        raise LabError("n_terms must be >= 1")


def eval_ok(
    k: int,
    sigma,
    n_terms: int,
    quadruple_fn: Callable[[int], CoefficientQuadruple] = quadruple,
) -> BoundedValue:
    """Partial sum of o_k over n <= n_terms with a rigorous remainder bound."""
    _check(k, n_terms)
    s = _as_sigma(sigma)
    q = quadruple_fn(k)
    table = get_table(3, n_terms)
    n = np.flatnonzero(table.counts[1 : n_terms + 1]) + 1
    r = table.counts[n].astype(np.float64)
    a = 2.0 * math.pi * np.sqrt(n.astype(np.float64))
    x = a * s
    c, sn = np.cos(x), np.sin(x)
    bracket = q.alpha * s * c + q.beta * s * sn + (q.gamma * c + q.delta * sn) / a
    terms = r / n * a ** (-k) * bracket
    value = -compensated_sum(terms) / math.pi

    # remainder: |term| <= r n^-1 (2pi)^-k n^-k/2 [S(|a|+|b|) + (|g|+|d|)/(2pi sqrt n)]
    tail_s = tail_interval(table, n_terms, 1.0 + k / 2.0)[1]
    tail_c = tail_interval(table, n_terms, 1.5 + k / 2.0)[1]
    tail = (2.0 * math.pi) ** (-k) / math.pi * (
        s * (abs(q.alpha) + abs(q.beta)) * tail_s
        + (abs(q.gamma) + abs(q.delta)) / (2.0 * math.pi) * tail_c
    )
    # cos/sin of a large argument carry an absolute error ~ eps * |x|
    trig_err = EPS * float(
        np.sum(r / n * a ** (-k) * (6.0 + 2.0 * x) * (s * (abs(q.alpha) + abs(q.beta)) + (abs(q.gamma) + abs(q.delta)) / a))
    )
    fp = (sum_budget(terms) + trig_err) / math.pi + 2 * EPS * abs(value)
    return BoundedValue(value, tail + fp, int(n_terms))


def main_terms(k: int, sigma) -> BoundedValue:
    """Polynomial part 8pi/(3+k)! S^(3+k) + sum_m C_{k-1-m}/m! S^m; odd-index C vanish."""
    s = _as_sigma(sigma)
    leading = leading_coefficient(k) * s ** (3 + k)
    parts = [leading]
    bound = (4 * k + 8) * EPS * abs(leading)
    for m in range(k):
        j = k - 1 - m
        if j % 2:
            continue
        cj = c_constant(j)
        w = s**m / math.factorial(m)
        parts.append(cj.value * w)
        bound += cj.bound * w + 4 * EPS * abs(cj.value * w)
    value = math.fsum(parts)
    return BoundedValue(value, bound + EPS * abs(value), 0)


def main_formula(
    k: int,
    sigma,
    n_terms: int,
    quadruple_fn: Callable[[int], CoefficientQuadruple] = quadruple,
) -> BoundedValue:
    _check(k, n_terms)
    poly = main_terms(k, sigma)
    osc = eval_ok(k, sigma, n_terms, quadruple_fn)
    value = poly.value + osc.value
    return BoundedValue(
        value, poly.bound + osc.bound + EPS * abs(value), osc.terms_used
    )
