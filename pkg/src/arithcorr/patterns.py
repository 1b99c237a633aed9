"""Sign-pattern censuses of mu and lambda at a tuple of shifts."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ._reduce import DEFAULT_SEGMENT_SIZE, exact_sum
from . import constants
from .correlations import Domain, DomainKind, Fn, Segment, scan
from .errors import DomainError, GuardError, QueryError

MAX_TUPLE = 4
SYMBOLS = (1, -1, 0)


def all_keys(k: int) -> list[tuple[int, ...]]:
    """Every pattern of length k, in the canonical report order."""
    return list(itertools.product(SYMBOLS, repeat=k))


def _code(key) -> int:
    return sum((s + 1) * 3**i for i, s in enumerate(key))


@dataclass
class PatternCensus:
    fn: Fn
    shifts: tuple[int, ...]
    domain: Domain
    counts: dict[tuple[int, ...], int]
    total: int

    @property
    def k(self) -> int:
        return len(self.shifts)

    def __getitem__(self, key) -> int:
        return self.counts[tuple(key)]


def census(
    fn: Fn | str,
    shifts,
    domain: Domain,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> PatternCensus:
    """Count each pattern (fn(n + a_1), ..., fn(n + a_k)) over the domain."""
    fn = Fn(fn)
    if fn is Fn.MU_SQUARED:
        raise QueryError("censuses take MU or LAMBDA")
    shifts = tuple(int(a) for a in shifts)
    if not shifts or len(shifts) > MAX_TUPLE:
        raise GuardError(f"census supports 1..{MAX_TUPLE} shifts")
    if len(set(shifts)) != len(shifts):
        raise DomainError("shifts must be distinct")
    k = len(shifts)

    def part(seg: Segment):
        code = np.zeros(seg.b - seg.a + 1, dtype=np.int64)
        for i, a in enumerate(shifts):
            code += (seg.values(fn, a).astype(np.int64) + 1) * 3**i
        return np.bincount(code[seg.mask], minlength=3**k)

    parts, _ = scan(domain, shifts, part, segment_size=segment_size, threads=threads)
    grid = np.sum(parts, axis=0) if parts else np.zeros(3**k, dtype=np.int64)
    counts = {key: int(grid[_code(key)]) for key in all_keys(k)}
    return PatternCensus(fn, shifts, domain, counts, int(grid.sum()))


def signed_combination(c: PatternCensus) -> int:
    """Sum over zero-free patterns of (product of symbols) * count."""
    total = 0
    for key, n in c.counts.items():
        if 0 not in key:
            total += int(np.prod(key)) * n
    return total


def joined_counts(c: PatternCensus) -> tuple[int, int]:
    """(agreeing, disagreeing) totals of a two-shift lambda census."""
    if c.fn is not Fn.LAMBDA or c.k != 2:
        raise QueryError("joined counts need a two-shift LAMBDA census")
    return c[(1, 1)] + c[(-1, -1)], c[(1, -1)] + c[(-1, 1)]


@dataclass(frozen=True)
class DensityRow:
    key: tuple[int, ...]
    count: int
    density: float
    predicted: float | None
    source: str


def _predictions(c: PatternCensus, cutoff: int) -> dict:
    """Limit density predicted for each key, with a label for its formula."""
    if c.k > 2:
        return {}
    integer_like = c.domain.kind in (DomainKind.INTEGERS, DomainKind.SHORT_INTERVAL)
    prime_like = c.domain.kind is DomainKind.SHIFTED_PRIMES
    if not (integer_like or prime_like):
        return {}
    out = {}
    if c.fn is Fn.LAMBDA:
        for key in all_keys(c.k):
            out[key] = (0.0, "never") if 0 in key else (0.5**c.k, f"1/{2**c.k}")
        return out
    if prime_like:
        s0 = constants.s0(cutoff).value
        for key in all_keys(c.k):
            if 0 in key:
                continue
            out[key] = (s0 / 2, "s0/2") if c.k == 1 else (s0 * s0 / 4, "s0^2/4")
        return out
    z = constants.zeta2_inverse().value
    if c.k == 1:
        return {(1,): (z / 2, "zeta2inv/2"), (-1,): (z / 2, "zeta2inv/2"), (0,): (1 - z, "1-zeta2inv")}
    s1 = constants.correlation_constant(1, c.shifts, cutoff).value
    for key in all_keys(2):
        zeros = key.count(0)
        if zeros == 0:
            out[key] = (s1 / 4, "s1/4")
        elif zeros == 1:
            out[key] = ((z - s1) / 2, "s3")
        else:
            out[key] = (1 - 2 * z + s1, "s2")
    return out


def densities(c: PatternCensus, cutoff: int = constants.DEFAULT_CUTOFF) -> list[DensityRow]:
    """Empirical count/total per key next to the predicted limit density.

    Predictions exist for one or two shifts over integer ranges and
    shifted primes.  For two mu-shifts the constant s1 is recomputed for
    the actual shift tuple.
    """
    preds = _predictions(c, cutoff)
    rows = []
    for key in all_keys(c.k):
        n = c.counts[key]
        pred, src = preds.get(key, (None, ""))
        rows.append(DensityRow(key, n, n / c.total if c.total else 0.0, pred, src))
    return rows


def weighted_census(shift: int, x: int, *, segment_size: int = DEFAULT_SEGMENT_SIZE, threads: int = 1):
    """(sum Lambda(n) [mu(n+a) = 1], sum Lambda(n) [mu(n+a) = -1]) over n <= x."""
    if x < 100:
        raise DomainError("x must be >= 100")

    def part(seg: Segment):
        w = seg.mangoldt()
        m = seg.values(Fn.MU, shift)
        return w[(w > 0) & (m == 1)], w[(w > 0) & (m == -1)]

    parts, _ = scan(Domain.integers(x), (shift,), part, segment_size=segment_size, threads=threads)
    plus, _ = exact_sum(p for p, _ in parts)
    minus, _ = exact_sum(m for _, m in parts)
    return plus, minus
