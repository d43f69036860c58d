"""Smooth compactly supported test functions.

The base bump on (a, b) is exp(-1/(t(1-t))) in the unit variable
t = (s - a)/(b - a), normalized to unit mass. A moment-killing bump is a
linear combination of shifted copies of the base bump on sub-intervals of
(a, b); the weights solve a small Vandermonde-like system so that
int chi = 1 and int chi(s) (s - a)^m ds = 0 for the requested m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import LabError, MomentSystemError
from . import quadrature

SUB_LENGTH = 0.4
MAX_RETRIES = 5
COND_LIMIT = 1e10


def _phi(u: np.ndarray) -> np.ndarray:
    out = np.zeros_like(u)
    inside = (u > 0.0) & (u < 1.0)
    ui = u[inside]
    out[inside] = np.exp(-1.0 / (ui * (1.0 - ui)))
    return out


def _phi_derivative(u: np.ndarray, order: int) -> np.ndarray:
    """phi, phi' or phi'' on (0, 1); zero outside."""
    out = np.zeros_like(u)
    inside = (u > 0.0) & (u < 1.0)
    ui = u[inside]
    g = ui * (1.0 - ui)
    gp = 1.0 - 2.0 * ui
    p = np.exp(-1.0 / g)
    if order == 0:
        out[inside] = p
    elif order == 1:
        out[inside] = p * gp / g**2
    elif order == 2:
        out[inside] = p * ((gp / g**2) ** 2 + (-2.0 * g - 2.0 * gp**2) / g**3)
    else:
        raise LabError("only derivatives up to order 2 are provided")
    return out


@dataclass(frozen=True, eq=False)
class BumpFunction:
    a: float
    b: float
    starts: tuple[float, ...]  # sub-bump left ends in the unit variable
    length: float  # sub-bump length in the unit variable
    coeffs: tuple[float, ...]
    moments_killed: tuple[int, ...] = ()
    residual_moments: tuple[float, ...] = field(default=(), compare=False)

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def normalization(self) -> float:
        """Weight of the first sub-bump (1/int phi for a plain bump)."""
        return self.coeffs[0]

    def _eval(self, sigma, order: int) -> np.ndarray:
        s = np.asarray(sigma, dtype=np.float64)
        t = (s - self.a) / self.width
        out = np.zeros_like(t)
        scale = (self.length * self.width) ** -order / self.width
        for t0, c in zip(self.starts, self.coeffs):
            out += c * _phi_derivative((t - t0) / self.length, order)
        return out * scale

    def __call__(self, sigma):
        out = self._eval(sigma, 0)
        return out[()] if out.ndim == 0 else out

    def derivative(self, sigma, order: int = 1):
        out = self._eval(sigma, order)
        return out[()] if out.ndim == 0 else out

    @property
    def seams(self) -> np.ndarray:
        t = sorted({0.0, 1.0, *self.starts, *(s + self.length for s in self.starts)})
        return self.a + self.width * np.clip(np.array(t), 0.0, 1.0)

    def breaks(self, max_width: float | None = None, extra=()) -> np.ndarray:
        """Panel breakpoints: sub-bump seams, any ``extra`` points inside the support."""
        pts = [self.seams]
        extra = np.asarray(extra, dtype=np.float64)
        if extra.size:
            pts.append(extra[(extra > self.a) & (extra < self.b)])
        br = np.unique(np.concatenate(pts))
        # each sub-bump seam segment gets MIN_PANELS panels regardless of extra points
        limit = self.width * self.length / quadrature.MIN_PANELS
        if max_width is not None:
            limit = min(limit, max_width)
        return quadrature.refine(br, limit)

    def integrate(self, f, extra=(), max_width: float | None = None) -> tuple[float, float]:
        """int chi(s) f(s) ds with its 32/64-node error estimate."""
        return quadrature.integrate(lambda s: self(s) * f(s), self.breaks(max_width, extra))

    def moment(self, m: int, about: float | None = None) -> float:
        c = self.a if about is None else about
        return self.integrate(lambda s: (s - c) ** m)[0]

    def norms(self, samples: int = 4001) -> tuple[float, float, float]:
        """Sup norms of chi, chi', chi'' on a dense grid (for reconstructing tail bounds)."""
        s = np.linspace(self.a, self.b, samples)
        return tuple(float(np.max(np.abs(self._eval(s, k)))) for k in range(3))


def _unit_moments(starts, length: float, rows: list[int]) -> np.ndarray:
    """A[i, j] = int phi((t - starts[j])/length) t^rows[i] dt."""
    out = np.empty((len(rows), len(starts)))
    for j, t0 in enumerate(starts):
        br = quadrature.refine([t0, t0 + length], length / quadrature.MIN_PANELS)
        x, w = quadrature.nodes(br, quadrature.HIGH)
        vals = _phi((x - t0) / length) * w
        for i, m in enumerate(rows):
            out[i, j] = math.fsum((vals * x**m).tolist())
    return out


def _placements(count: int, length: float, attempt: int) -> tuple[float, ...]:
    base = np.linspace(0.0, 1.0 - length, count) if count > 1 else np.array([0.0])
    if attempt:
        rng = np.random.default_rng(attempt)
        base = base + rng.uniform(-0.02, 0.02, size=count)
        base = np.clip(base, 0.0, 1.0 - length)
    return tuple(float(t) for t in base)


def make_bump(a: float, b: float, moments_to_kill=()) -> BumpFunction:
    """Normalized bump on (a, b), optionally with vanishing moments about a."""
    a, b = float(a), float(b)
    if not (0.0 <= a < b) or not math.isfinite(b):
        raise LabError(f"need 0 <= a < b, got ({a}, {b})")
    kill = tuple(sorted(set(int(m) for m in moments_to_kill)))
    if any(m not in (1, 2, 3, 4) for m in kill):
        raise LabError("moments_to_kill must be a subset of {1, 2, 3, 4}")
    if not kill:
        mass = _unit_moments((0.0,), 1.0, [0])[0, 0]
        bump = BumpFunction(a, b, (0.0,), 1.0, (1.0 / mass,))
        return _with_residuals(bump)

    rows = [0, *kill]
    count = len(rows)
    for attempt in range(MAX_RETRIES + 1):
        starts = _placements(count, SUB_LENGTH, attempt)
        A = _unit_moments(starts, SUB_LENGTH, rows)
        if np.linalg.cond(A) > COND_LIMIT:
            continue
        rhs = np.zeros(count)
        rhs[0] = 1.0
        coeffs = np.linalg.solve(A, rhs)
        # one step of iterative refinement against the same matrix
        coeffs += np.linalg.solve(A, rhs - A @ coeffs)
        bump = BumpFunction(a, b, starts, SUB_LENGTH, tuple(float(c) for c in coeffs), kill)
        return _with_residuals(bump)
    raise MomentSystemError(
        f"moment system singular for every placement tried ({MAX_RETRIES + 1} attempts)"
    )


def _with_residuals(bump: BumpFunction) -> BumpFunction:
    res = tuple(bump.moment(m) for m in range(1, 5))
    object.__setattr__(bump, "residual_moments", res)
    return bump
