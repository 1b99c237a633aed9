"""Segment partitioning and order-stable reduction helpers.

Every engine splits its index range into fixed segments, evaluates them
(possibly on a thread pool) and combines the partial results in segment
order.  Integer partials add exactly.  Floating terms are gathered and
summed with ``math.fsum``, which is correctly rounded, so the result does
not depend on the thread count or on the segment size.
"""

from __future__ import annotations

import math
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

T = TypeVar("T")
R = TypeVar("R")

DEFAULT_SEGMENT_SIZE = 1 << 22

_EPS = sys.float_info.epsilon


def split_range(lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> list[tuple[int, int]]:
    """Cut the inclusive range [lo, hi] into consecutive inclusive pieces."""
    if segment_size < 1:
        raise ValueError("segment_size must be positive")
    if hi < lo:
        return []
    out = []
    a = lo
    while a <= hi:
        b = min(hi, a + segment_size - 1)
        out.append((a, b))
        a = b + 1
    return out


def map_ordered(fn: Callable[[T], R], items: Sequence[T], threads: int = 1) -> list[R]:
    """Apply ``fn`` to every item, returning results in input order."""
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def exact_sum(chunks: Iterable[np.ndarray]) -> tuple[float, float]:
    """Correctly rounded sum of all terms in ``chunks``.

    Returns ``(value, error_bound)``.  The bound covers the final rounding
    plus half an ulp of representation error on every input term.
    """
    parts = [np.asarray(c, dtype=np.float64) for c in chunks]
    parts = [c for c in parts if c.size]
    if not parts:
        return 0.0, 0.0
    terms = np.concatenate(parts)
    value = math.fsum(terms.tolist())
    abs_mass = math.fsum(np.abs(terms).tolist())
    return value, 0.5 * _EPS * (abs_mass + abs(value))
