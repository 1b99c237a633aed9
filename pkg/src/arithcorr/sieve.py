"""Segmented sieve tables for mu, lambda, Omega, Lambda and primality.

Each segment [lo, hi] is factored by the primes up to sqrt(hi): every
element starts as its own cofactor, and each small prime p divides out
of the multiples of p, p^2, ... in strided passes.  What remains after
the pass is 1 or a single prime larger than sqrt(hi).  One factorization
serves all five table kinds, and offset windows cost the same as
windows starting at 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from ._reduce import DEFAULT_SEGMENT_SIZE, exact_sum, map_ordered, split_range
from .cache import SegmentCache
from .errors import DomainError, RangeError

INT64_MAX = 2**63 - 1


class Kind(str, enum.Enum):
    MU = "MU"
    LAMBDA = "LAMBDA"
    BIG_OMEGA = "BIG_OMEGA"
    MANGOLDT = "MANGOLDT"
    IS_PRIME = "IS_PRIME"


class SumKind(str, enum.Enum):
    MU = "MU"
    LAMBDA = "LAMBDA"
    MU_SQUARED = "MU_SQUARED"
    PRIME_COUNT = "PRIME_COUNT"
    MANGOLDT_PSI = "MANGOLDT_PSI"


@dataclass(frozen=True)
class Window:
    """Inclusive integer window [lo, hi] with 1 <= lo <= hi < 2**63."""

    lo: int
    hi: int

    def __post_init__(self):
        lo, hi = int(self.lo), int(self.hi)
        if lo < 1:
            raise DomainError(f"window start {lo} < 1")
        if hi > INT64_MAX:
            raise RangeError(f"window end {hi} exceeds 2**63 - 1")
        if hi < lo:
            raise DomainError(f"empty window [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, n: int) -> bool:
        return self.lo <= n <= self.hi


@dataclass
class FunctionTable:
    """Dense values of one arithmetic function over a window.

    ``values[i]`` belongs to ``n = window.lo + i``.  MANGOLDT tables hold an
    ``(width, 2)`` array of prime-power pairs ``(p, k)``; ``(1, 0)`` marks an
    integer that is not a prime power, so ``log(values[:, 0])`` is Lambda.
    """

    kind: Kind
    window: Window
    values: np.ndarray

    def __len__(self) -> int:
        return self.window.width

    def __getitem__(self, n: int):
        if n not in self.window:
            raise IndexError(f"{n} outside [{self.window.lo}, {self.window.hi}]")
        v = self.values[n - self.window.lo]
        if self.kind is Kind.MANGOLDT:
            p, k = int(v[0]), int(v[1])
            return None if k == 0 else (p, k)
        return int(v)

    def items(self):
        for i in range(self.window.width):
            n = self.window.lo + i
            yield n, self[n]


@dataclass
class Factorization:
    """Per-element factorization data for one contiguous range."""

    lo: int
    mu: np.ndarray  # int8
    lam: np.ndarray  # int8
    big_omega: np.ndarray  # int8
    pp_base: np.ndarray  # int64, 1 when not a prime power
    pp_exp: np.ndarray  # int8, 0 when not a prime power

    @property
    def hi(self) -> int:
        return self.lo + len(self.mu) - 1

    @property
    def is_prime(self) -> np.ndarray:
        return self.pp_exp == 1

    def column(self, kind: Kind) -> np.ndarray:
        if kind is Kind.MU:
            return self.mu
        if kind is Kind.LAMBDA:
            return self.lam
        if kind is Kind.BIG_OMEGA:
            return self.big_omega
        if kind is Kind.IS_PRIME:
            return self.is_prime
        return np.column_stack([self.pp_base, self.pp_exp.astype(np.int64)])

    @staticmethod
    def concat(parts: list["Factorization"]) -> "Factorization":
        if len(parts) == 1:
            return parts[0]
        return Factorization(
            parts[0].lo,
            *(np.concatenate([getattr(p, f) for p in parts]) for f in ("mu", "lam", "big_omega", "pp_base", "pp_exp")),
        )


@lru_cache(maxsize=8)
def _simple_primes(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


def base_primes(limit: int) -> np.ndarray:
    """All primes <= limit, ascending (int64)."""
    # round up so nearby limits share one cached sieve
    size = 1 << max(10, int(limit).bit_length())
    primes = _simple_primes(size)
    return primes[: np.searchsorted(primes, limit, side="right")]


def factor_segment(lo: int, hi: int) -> Factorization:
    """Factor every integer in [lo, hi] against the primes up to sqrt(hi)."""
    width = hi - lo + 1
    rem = np.arange(lo, hi + 1, dtype=np.int64)
    omega = np.zeros(width, dtype=np.int8)
    big_omega = np.zeros(width, dtype=np.int8)
    squarefree = np.ones(width, dtype=bool)
    base = np.ones(width, dtype=np.int64)

    for p in base_primes(math.isqrt(hi)).tolist():
        start = (-lo) % p
        if start >= width:
            continue
        sl = slice(start, None, p)
        omega[sl] += 1
        base[sl] = p
        pk = p
        while True:
            rem[sl] //= p
            big_omega[sl] += 1
            pk *= p
            if pk > hi:
                break
            start = (-lo) % pk
            if start >= width:
                break
            sl = slice(start, None, pk)
            squarefree[sl] = False

    big = rem > 1
    omega[big] += 1
    big_omega[big] += 1
    lone = big & (omega == 1)
    base[lone] = rem[lone]

    mu = np.where(omega % 2 == 0, 1, -1).astype(np.int8)
    mu[~squarefree] = 0
    lam = np.where(big_omega % 2 == 0, 1, -1).astype(np.int8)
    prime_power = omega == 1
    pp_base = np.where(prime_power, base, 1)
    pp_exp = np.where(prime_power, big_omega, 0).astype(np.int8)
    return Factorization(lo, mu, lam, big_omega, pp_base, pp_exp)


def factor_window(
    window: Window, *, segment_size: int = DEFAULT_SEGMENT_SIZE, threads: int = 1
) -> Factorization:
    """Factorization of a whole window, assembled from fixed segments."""
    segs = split_range(window.lo, window.hi, segment_size)
    return Factorization.concat(map_ordered(lambda s: factor_segment(*s), segs, threads))


def build_table(
    kind: Kind | str,
    window: Window,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
    cache_dir=None,
) -> FunctionTable:
    """Exact table of ``kind`` over ``window``.

    Values do not depend on ``segment_size`` or ``threads``.  With
    ``cache_dir`` set, segments are read from and written to the on-disk
    cache.
    """
    kind = Kind(kind)
    cache = SegmentCache(cache_dir) if cache_dir else None

    def one(seg):
        a, b = seg
        if cache is not None:
            hit = cache.load(kind.value, a, b)
            if hit is not None:
                return hit
        values = factor_segment(a, b).column(kind)
        if cache is not None:
            cache.store(kind.value, a, b, values)
        return values

    parts = map_ordered(one, split_range(window.lo, window.hi, segment_size), threads)
    return FunctionTable(kind, window, np.concatenate(parts) if len(parts) > 1 else parts[0])


def _prime_segment(lo: int, hi: int) -> np.ndarray:
    flags = np.ones(hi - lo + 1, dtype=bool)
    for p in base_primes(math.isqrt(hi)).tolist():
        start = max(p * p, -(-lo // p) * p)
        if start > hi:
            continue
        flags[start - lo :: p] = False
    if lo == 1:
        flags[0] = False
    return np.flatnonzero(flags).astype(np.int64) + lo


def primes_in(window: Window, *, segment_size: int = DEFAULT_SEGMENT_SIZE, threads: int = 1) -> np.ndarray:
    """Primes in [lo, hi], ascending, by a segmented sieve of Eratosthenes."""
    parts = map_ordered(lambda s: _prime_segment(*s), split_range(window.lo, window.hi, segment_size), threads)
    return np.concatenate(parts)


def summatory(
    kind: SumKind | str, x: int, *, segment_size: int = DEFAULT_SEGMENT_SIZE, threads: int = 1
) -> int | float:
    """M(x), L(x), Q(x), pi(x) as exact ints, or psi(x) as a float.

    psi(x) is the correctly rounded sum of the double-precision values
    log p over the prime powers p^k <= x.
    """
    kind = SumKind(kind)
    x = int(x)
    if x < 1:
        raise DomainError("summatory functions need x >= 1")
    segs = split_range(1, x, segment_size)

    if kind is SumKind.MANGOLDT_PSI:
        def logs(seg):
            f = factor_segment(*seg)
            return np.log(f.pp_base[f.pp_exp > 0].astype(np.float64))

        return exact_sum(map_ordered(logs, segs, threads))[0]

    def part(seg) -> int:
        if kind is SumKind.PRIME_COUNT:
            return int(_prime_segment(*seg).size)
        f = factor_segment(*seg)
        if kind is SumKind.MU:
            return int(f.mu.sum(dtype=np.int64))
        if kind is SumKind.LAMBDA:
            return int(f.lam.sum(dtype=np.int64))
        return int(np.count_nonzero(f.mu))

    return sum(map_ordered(part, segs, threads))


def log_integral(x: float) -> float:
    """li(x) = integral of 1/log t over [2, x], by adaptive quadrature.

    The integral is evaluated at 30 significant digits and rounded once,
    so the result is the double nearest to li(x).
    """
    if x < 2:
        raise DomainError("log_integral needs x >= 2")
    if x == 2:
        return 0.0
    with mpmath.workdps(30):
        # split at powers of e so each piece has a smooth integrand
        pts = [mpmath.mpf(2)]
        k = 1
        while mpmath.e ** k < x:
            if mpmath.e ** k > 2:
                pts.append(mpmath.e ** k)
            k += 1
        pts.append(mpmath.mpf(x))
        val = mpmath.quad(lambda t: 1 / mpmath.log(t), pts)
    return float(val)
