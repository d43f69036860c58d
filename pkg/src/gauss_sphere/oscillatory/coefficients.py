"""Exact trigonometric and polynomial coefficients of the k-fold antiderivative

    F_k(x) = int_0^x ... int_0 (t cos t - sin t) dt ... dt
           = Q_k(x) + alpha_k x cos x + beta_k x sin x + gamma_k cos x + delta_k sin x.

One integration acts on (alpha, beta, gamma, delta) as the integer matrix
``M`` below and adds the constant -alpha + delta to the polynomial part.
Everything here is integer or Fraction arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import LabError

Matrix = tuple[tuple[int, ...], ...]

M: Matrix = (
    (0, -1, 0, 0),
    (1, 0, 0, 0),
    (1, 0, 0, -1),
    (0, 1, 1, 0),
)
INITIAL = (1, 0, 0, -1)
IDENTITY: Matrix = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
MAX_QUADRUPLE_K = 10**6
MAX_Q_K = 64


def re_i_pow(k: int) -> int:
    return (1, 0, -1, 0)[k % 4]


def im_i_pow(k: int) -> int:
    return (0, 1, 0, -1)[k % 4]


@dataclass(frozen=True)
class CoefficientQuadruple:
    k: int
    alpha: int
    beta: int
    gamma: int
    delta: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.alpha, self.beta, self.gamma, self.delta)


@dataclass(frozen=True)
class QPolynomial:
    k: int
    coefficients: tuple[Fraction, ...]  # [Q_k]_j for j = 0..k-1

    def __call__(self, x: float) -> float:
        return sum(float(c) * x**j for j, c in enumerate(self.coefficients))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(4)) for j in range(4))
        for i in range(4)
    )


def matvec(a: Matrix, v) -> tuple[int, ...]:
    return tuple(sum(a[i][t] * v[t] for t in range(4)) for i in range(4))


def matrix_power(k: int) -> Matrix:
    """M^k by binary powering in exact integers."""
    if k < 0:
        raise LabError("k must be nonnegative")
    result, base = IDENTITY, M
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def matrix_power_naive(k: int) -> Matrix:
    result = IDENTITY
    for _ in range(k):
        result = matmul(M, result)
    return result


def _j_power(k: int) -> tuple[tuple[int, int], tuple[int, int]]:
    # J is the upper-left block of M; J^k cycles with period 4
    c, s = re_i_pow(k), im_i_pow(k)
    return ((c, -s), (s, c))


def block_power(k: int) -> Matrix:
    """M^k from the block form [[J^k, 0], [k J^(k-1), J^k]]."""
    jk = _j_power(k)
    jk1 = _j_power(k - 1) if k >= 1 else ((0, 0), (0, 0))
    rows = []
    for i in range(2):
        rows.append((jk[i][0], jk[i][1], 0, 0))
    for i in range(2):
        rows.append((k * jk1[i][0], k * jk1[i][1], jk[i][0], jk[i][1]))
    return tuple(rows)


def quadruple(k: int) -> CoefficientQuadruple:
    """(alpha, beta, gamma, delta)_k = M^k (1, 0, 0, -1), exact."""
    if not 0 <= k <= MAX_QUADRUPLE_K:
        raise LabError(f"k must lie in [0, {MAX_QUADRUPLE_K}], got {k}")
    return CoefficientQuadruple(k, *matvec(matrix_power(k), INITIAL))


def quadruple_from_block(k: int) -> CoefficientQuadruple:
    return CoefficientQuadruple(k, *matvec(block_power(k), INITIAL))


def closed_form_quadruple(k: int) -> CoefficientQuadruple:
    """Closed forms consistent with M: (alpha + i beta)_k = i^k, (gamma + i delta)_k = (k+1) i^(k-1)."""
    return CoefficientQuadruple(
        k, re_i_pow(k), im_i_pow(k), (k + 1) * im_i_pow(k), -(k + 1) * re_i_pow(k)
    )


def flipped_beta_quadruple(k: int) -> CoefficientQuadruple:
    """The closed form with the sign of beta flipped, beta_k = -Im[i^k].

    Disagrees with the recursion for every odd k; kept as a negative control
    for the series pipeline.
    """
    c = closed_form_quadruple(k)
    return CoefficientQuadruple(k, c.alpha, -im_i_pow(k), c.gamma, c.delta)


def q_polynomial(k: int) -> QPolynomial:
    """[Q_k]_j = (k - j + 1) Im[i^(k-j+2)] / j!, j < k."""
    if not 0 <= k <= MAX_Q_K:
        raise LabError(f"k must lie in [0, {MAX_Q_K}], got {k}")
    coeffs = tuple(
        Fraction((k - j + 1) * im_i_pow(k - j + 2), math.factorial(j)) for j in range(k)
    )
    return QPolynomial(k, coeffs)


def q_polynomial_by_recursion(k: int) -> QPolynomial:
    """Q_k = int_0 Q_{k-1} + (delta_{k-1} - alpha_{k-1}), starting from Q_0 = 0."""
    if not 0 <= k <= MAX_Q_K:
        raise LabError(f"k must lie in [0, {MAX_Q_K}], got {k}")
    coeffs: list[Fraction] = []
    for step in range(1, k + 1):
        prev = quadruple(step - 1)
        integrated = [Fraction(0)] + [c / (j + 1) for j, c in enumerate(coeffs)]
        integrated[0] = Fraction(prev.delta - prev.alpha)
        coeffs = integrated
    return QPolynomial(k, tuple(coeffs))
