"""Deterministic compensated summation.

Every series in the package is reduced through :func:`compensated_sum`, which
cuts the terms (in the order given, ascending n by convention) into fixed
chunks of ``CHUNK`` terms, reduces each chunk with an exactly rounded sum and
then reduces the chunk results the same way. Chunk boundaries never depend on
the worker count, so the result is bit-identical for any ``workers``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable

import numpy as np

CHUNK = 4096
EPS = float(np.finfo(np.float64).eps)
_default_workers = 1


def set_default_workers(workers: int) -> None:
    """Worker count used when ``compensated_sum`` is called without one."""
    global _default_workers
    _default_workers = max(1, int(workers))


def neumaier_sum(values: Iterable[float]) -> float:
    """Kahan-Neumaier compensated sum (sequential reference implementation)."""
    total = 0.0
    comp = 0.0
    for v in values:
        v = float(v)
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    return total + comp


def _chunks(arr: np.ndarray) -> list[np.ndarray]:
    return [arr[i : i + CHUNK] for i in range(0, arr.size, CHUNK)]


def compensated_sum(values, workers: int | None = None) -> float:
    workers = _default_workers if workers is None else workers
    arr = np.ascontiguousarray(values, dtype=np.float64).ravel()
    if arr.size == 0:
        return 0.0
    if arr.size <= CHUNK:
        return math.fsum(arr.tolist())
    parts = _chunks(arr)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partial = list(pool.map(lambda c: math.fsum(c.tolist()), parts))
    else:
        partial = [math.fsum(c.tolist()) for c in parts]
    return math.fsum(partial)


def compensated_sum_complex(values, workers: int | None = None) -> complex:
    arr = np.asarray(values, dtype=np.complex128).ravel()
    return complex(
        compensated_sum(arr.real, workers), compensated_sum(arr.imag, workers)
    )


def sum_budget(values) -> float:
    """Rounding budget for reducing ``values``.

    One ulp per term, plus one rounding per chunk in the reduction tree.
    """
    arr = np.abs(np.asarray(values, dtype=np.float64)).ravel()
    if arr.size == 0:
        return 0.0
    n_chunks = -(-arr.size // CHUNK)
    return (2 + n_chunks) * EPS * math.fsum(arr.tolist())
