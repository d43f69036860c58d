"""Representation numbers r_d(n) and the lattice counting function N_d.

Radii are handled as :class:`SqrtRadius`, an exact rational square, so the
question "is the shell |v|^2 = n inside the ball?" is always answered in
integer arithmetic.
"""

from __future__ import annotations

import math
import threading
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import CapacityError, LabError, OutOfTableError

MAX_N_CAPACITY = 10**8
CUBE_HALF_DIAGONAL = math.sqrt(3.0) / 2.0
FLOAT_RADIUS_DENOMINATOR = 10**6


@dataclass(frozen=True, order=False)
class SqrtRadius:
    """The radius sqrt(p/q), stored through its exact square p/q."""

    p: int
    q: int = 1

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if q <= 0 or p < 0:
            raise LabError(f"invalid radius square {p}/{q}")
        g = math.gcd(p, q) or 1
        object.__setattr__(self, "p", p // g)
        object.__setattr__(self, "q", q // g)

    @classmethod
    def from_fraction(cls, sigma2) -> "SqrtRadius":
        f = Fraction(sigma2)
        return cls(f.numerator, f.denominator)

    @classmethod
    def parse(cls, text: str) -> "SqrtRadius":
        """Parse ``"p/q"``, ``"p"`` or a decimal string as the square of the radius."""
        try:
            return cls.from_fraction(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise LabError(f"cannot parse radius square {text!r}") from exc

    @classmethod
    def from_float(
        cls, sigma: float, max_denominator: int = FLOAT_RADIUS_DENOMINATOR
    ) -> "SqrtRadius":
        """Round sigma**2 to a rational with bounded denominator.

        Floating radii can sit a rounding error away from a lattice shell, so
        this conversion always warns.
        """
        if sigma < 0 or not math.isfinite(sigma):
            raise LabError(f"invalid radius {sigma!r}")
        approx = Fraction(sigma * sigma).limit_denominator(max_denominator)
        warnings.warn(
            f"float radius {sigma!r} rounded to sqrt({approx}); pass SqrtRadius "
            "to control lattice-shell inclusion exactly",
            stacklevel=2,
        )
        return cls.from_fraction(approx)

    @property
    def sigma2(self) -> Fraction:
        return Fraction(self.p, self.q)

    @cached_property
    def sigma(self) -> float:
        return math.sqrt(self.p / self.q)

    def floor_square(self) -> int:
        """Largest n with n <= sigma**2."""
        return self.p // self.q

    def contains_shell(self, n: int) -> bool:
        return n * self.q <= self.p

    def gap_to_shell(self, n: int, sqrt_n: float | None = None) -> float:
        """sigma - sqrt(n), computed as (sigma^2 - n)/(sigma + sqrt(n)).

        The numerator is formed exactly, so there is no cancellation near a shell.
        """
        if sqrt_n is None:
            sqrt_n = math.sqrt(n)
        num = (self.p - n * self.q) / self.q
        den = self.sigma + sqrt_n
        return 0.0 if den == 0.0 else num / den

    def __str__(self) -> str:
        return f"{self.p}/{self.q}" if self.q != 1 else str(self.p)


def as_radius(sigma) -> SqrtRadius:
    if isinstance(sigma, SqrtRadius):
        return sigma
    if isinstance(sigma, (int, Fraction)):
        raise LabError(
            "ambiguous radius: pass SqrtRadius (its square) or a float sigma"
        )
    return SqrtRadius.from_float(float(sigma))


@dataclass(frozen=True, eq=False)
class RadialCountTable:
    dimension: int
    max_n: int
    counts: np.ndarray
    cumulative: np.ndarray

    def r(self, n: int) -> int:
        return int(self.counts[n])

    def covers(self, n: int) -> bool:
        return 0 <= n <= self.max_n


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _r1(max_n: int) -> np.ndarray:
    counts = np.zeros(max_n + 1, dtype=np.int64)
    a = np.arange(1, math.isqrt(max_n) + 1, dtype=np.int64)
    counts[0] = 1
    counts[a * a] = 2
    return counts


def _r2(max_n: int) -> np.ndarray:
    counts = np.zeros(max_n + 1, dtype=np.int64)
    root = math.isqrt(max_n)
    squares = np.arange(root + 1, dtype=np.int64) ** 2
    weights = np.full(root + 1, 2, dtype=np.int64)
    weights[0] = 1
    for a in range(root + 1):
        a2 = a * a
        bmax = math.isqrt(max_n - a2)
        # a^2 + b^2 is strictly increasing in b, so the fancy index has no repeats
        counts[a2 + squares[: bmax + 1]] += weights[a] * weights[: bmax + 1]
    return counts


def _convolve_squares(base: np.ndarray, max_n: int) -> np.ndarray:
    """r_{d+1} from r_d via r_{d+1}(n) = sum_a r_1(a^2) r_d(n - a^2)."""
    out = base.copy()
    for a in range(1, math.isqrt(max_n) + 1):
        a2 = a * a
        out[a2:] += 2 * base[: max_n + 1 - a2]
    return out


def build_table(d: int, max_n: int) -> RadialCountTable:
    """Representation numbers r_d(n), n <= max_n, for d in {1, 2, 3}.

    d=1 directly, d=2 by sieving pairs (a, b), d=3 by convolving the d=2
    table with the squares. Integer arithmetic throughout.
    """
    if d not in (1, 2, 3):
        raise LabError(f"dimension must be 1, 2 or 3, got {d}")
    max_n = int(max_n)
    if max_n < 0:
        raise LabError("max_n must be nonnegative")
    if max_n > MAX_N_CAPACITY:
        raise CapacityError(f"max_n={max_n} exceeds capacity {MAX_N_CAPACITY}")
    if d == 1:
        counts = _r1(max_n)
    elif d == 2:
        counts = _r2(max_n)
    else:
        counts = _convolve_squares(_r2(max_n), max_n)
    cumulative = np.cumsum(counts, dtype=np.int64)
    return RadialCountTable(d, max_n, _freeze(counts), _freeze(cumulative))


def enumerate_ball_counts(d: int, max_n: int) -> np.ndarray:
    """Brute-force r_d(n) by enumerating every v with |v|^2 <= max_n (test oracle)."""
    root = math.isqrt(max_n)
    axis = np.arange(-root, root + 1, dtype=np.int64) ** 2
    norms = axis
    for _ in range(d - 1):
        norms = (norms[..., None] + axis).reshape(-1)
        norms = norms[norms <= max_n]
    return np.bincount(norms[norms <= max_n], minlength=max_n + 1).astype(np.int64)


_cache: dict[int, RadialCountTable] = {}
_cache_lock = threading.Lock()


def get_table(d: int, max_n: int) -> RadialCountTable:
    """Shared table for dimension d covering at least max_n (built once, reused)."""
    with _cache_lock:
        table = _cache.get(d)
        if table is None or table.max_n < max_n:
            table = build_table(d, max_n)
            _cache[d] = table
        return table


def count_N(table: RadialCountTable, sigma: SqrtRadius) -> int:
    """N_d(sigma) = #{v in Z^d : |v| <= sigma}, boundary shell included exactly."""
    sigma = as_radius(sigma)
    n = sigma.floor_square()
    if n > table.max_n:
        raise OutOfTableError(f"sigma^2={sigma.sigma2} beyond table max_n={table.max_n}")
    return int(table.cumulative[n])


def gauss_upper(x):
    """Cube-covering upper bound on N_3(sqrt(x)): (4pi/3)(sqrt(x) + sqrt(3)/2)^3."""
    return (4.0 * math.pi / 3.0) * (np.sqrt(x) + CUBE_HALF_DIAGONAL) ** 3


def gauss_lower(x):
    """Lower companion of :func:`gauss_upper`, valid for sqrt(x) >= sqrt(3)/2."""
    return (4.0 * math.pi / 3.0) * np.maximum(np.sqrt(x) - CUBE_HALF_DIAGONAL, 0.0) ** 3


def _sandwich_integral(N: float, s: float, sign: float) -> float:
    # s * int_N^inf (4pi/3)(sqrt(x) + sign*c)^3 x^(-s-1) dx, expanded by the binomial theorem
    c = sign * CUBE_HALF_DIAGONAL
    total = 0.0
    for i, binom in enumerate((1, 3, 3, 1)):
        power = (3 - i) / 2.0
        total += binom * c**i * N ** (power - s) / (s - power)
    return s * (4.0 * math.pi / 3.0) * total


def tail_interval(table: RadialCountTable, N: int, s: float) -> tuple[float, float]:
    """Certified interval for sum_{n > N} r_3(n) n^(-s), s > 3/2.

    Abel summation gives the tail as -A(N) N^-s + s int_N^inf A(x) x^(-s-1) dx
    with A(x) = N_3(sqrt(x)); A(N) is read from the table and A(x) beyond N
    is sandwiched by the cube-covering bounds.
    """
    if table.dimension != 3:
        raise LabError("tail bounds are only derived for d=3")
    if s <= 1.5:
        raise LabError(f"tail diverges for s={s} <= 3/2")
    if N < 1:
        raise LabError("tail bounds need N >= 1")
    if N > table.max_n:
        raise OutOfTableError(f"N={N} beyond table max_n={table.max_n}")
    boundary = float(table.cumulative[N]) * float(N) ** (-s)
    lo = _sandwich_integral(float(N), s, -1.0) - boundary
    hi = _sandwich_integral(float(N), s, +1.0) - boundary
    return max(lo, 0.0), hi


def tail_upper(table: RadialCountTable, N: int, s: float) -> float:
    return tail_interval(table, N, s)[1]
