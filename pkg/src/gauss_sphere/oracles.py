"""Independent oracles used by the test-suite and the acceptance runner.

None of these share code with the production paths they check.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .oscillatory.coefficients import CoefficientQuadruple, QPolynomial

# An exact trig-polynomial is a dict {(p, kind): coefficient} standing for
# sum coeff * x^p * cos(x) (kind "c"), x^p * sin(x) (kind "s") or x^p (kind "1").
TrigPoly = dict


def _add(out: TrigPoly, key, value: Fraction) -> None:
    out[key] = out.get(key, Fraction(0)) + value
    if out[key] == 0:
        del out[key]


def _antiderivative_term(p: int, kind: str) -> TrigPoly:
    """An antiderivative of x^p cos x, x^p sin x or x^p, by parts."""
    out: TrigPoly = {}
    if kind == "1":
        _add(out, (p + 1, "1"), Fraction(1, p + 1))
        return out
    # int x^p cos = x^p sin - p int x^(p-1) sin ; int x^p sin = -x^p cos + p int x^(p-1) cos
    sign = Fraction(1)
    cur_kind = kind
    for q in range(p, -1, -1):
        if cur_kind == "c":
            _add(out, (q, "s"), sign)
            sign, cur_kind = -sign * q, "s"
        else:
            _add(out, (q, "c"), -sign)
            sign, cur_kind = sign * q, "c"
        if sign == 0:
            break
    return out


def integrate_from_zero(f: TrigPoly) -> TrigPoly:
    """x -> int_0^x f, exactly."""
    out: TrigPoly = {}
    for (p, kind), coeff in f.items():
        for key, v in _antiderivative_term(p, kind).items():
            _add(out, key, coeff * v)
    # subtract the value at 0: only p = 0 cos and constant terms survive
    at_zero = out.get((0, "c"), Fraction(0)) + out.get((0, "1"), Fraction(0))
    if at_zero:
        _add(out, (0, "1"), -at_zero)
    return out


def iterated_antiderivative(k: int) -> TrigPoly:
    """k-fold integral from 0 of x cos x - sin x."""
    f: TrigPoly = {(1, "c"): Fraction(1), (0, "s"): Fraction(-1)}
    for _ in range(k):
        f = integrate_from_zero(f)
    return f


def oracle_quadruple(k: int) -> CoefficientQuadruple:
    f = iterated_antiderivative(k)
    extra = [key for key in f if key[1] != "1" and key[0] > 1]
    if extra:
        raise AssertionError(f"unexpected trig terms {extra}")

    def get(key) -> int:
        v = f.get(key, Fraction(0))
        if v.denominator != 1:
            raise AssertionError(f"non-integer coefficient {v} for {key}")
        return int(v)

    return CoefficientQuadruple(k, get((1, "c")), get((1, "s")), get((0, "c")), get((0, "s")))


def oracle_q_polynomial(k: int) -> QPolynomial:
    f = iterated_antiderivative(k)
    deg = max((p for p, kind in f if kind == "1"), default=-1)
    if deg >= k:
        raise AssertionError("polynomial part of unexpected degree")
    return QPolynomial(k, tuple(f.get((j, "1"), Fraction(0)) for j in range(k)))


def bessel_series(nu: float, z: float, terms: int = 30) -> float:
    """Ascending series J_nu(z) = sum (-1)^m (z/2)^(2m+nu) / (m! Gamma(m+nu+1))."""
    half = z / 2.0
    return math.fsum(
        (-1) ** m * half ** (2 * m + nu) / (math.factorial(m) * math.gamma(m + nu + 1))
        for m in range(terms)
    )


def brute_force_count(d: int, sigma2: Fraction) -> int:
    """#{v in Z^d : |v|^2 <= sigma2} by enumerating the cube."""
    sigma2 = Fraction(sigma2)
    root = math.isqrt(sigma2.numerator // sigma2.denominator)
    axis = np.arange(-root, root + 1, dtype=np.int64) ** 2
    norms = axis
    for _ in range(d - 1):
        norms = (norms[..., None] + axis).reshape(-1)
    return int(np.count_nonzero(norms * sigma2.denominator <= sigma2.numerator))
