"""Euler products and Dirichlet series for the densities used as predictions.

Products are accumulated as a correctly rounded sum of ``log1p`` terms
and exponentiated once.  Tail bounds are simple and provable rather than
tight; push the cutoff up when more accuracy is needed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from ._reduce import exact_sum
from .errors import DomainError
from .sieve import base_primes

# Digits as printed in the literature, reported next to recomputed values.
PUBLISHED_DIGITS = {
    "s0": "0.373955838964330040631201",
    "zeta2inv": "0.607988295164627617135754",
    "s1": "0.32263461660543396347",
    "s2": "0.106780412897381",
    "s3": "0.142646242624296",
}

# sum_{d squarefree} 1/(d phi(d)) = zeta(2) zeta(3) / zeta(6), rounded up
_N_OVER_PHI_MEAN = 1.9436

DEFAULT_CUTOFF = 10**7


class Method(str, enum.Enum):
    EULER_PRODUCT = "EULER_PRODUCT"
    DIRICHLET_SERIES = "DIRICHLET_SERIES"
    CLOSED_FORM = "CLOSED_FORM"


@dataclass(frozen=True)
class ConstantResult:
    name: str
    value: float
    cutoff_prime: int
    tail_bound: float
    method: Method

    @property
    def published(self) -> str | None:
        return PUBLISHED_DIGITS.get(self.name)

    def as_record(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "cutoff": self.cutoff_prime,
            "tail_bound": self.tail_bound,
            "method": self.method.value,
            "published": self.published,
        }


@dataclass(frozen=True)
class TupleLocalCount:
    p: int
    varpi: int


def _product_from_logs(logs: np.ndarray) -> tuple[float, float]:
    total, err = exact_sum([logs])
    value = math.exp(total)
    # exp adds at most one ulp on top of the propagated log error
    return value, float(value * (err + 2 * np.finfo(float).eps))


def s0(cutoff_prime: int = DEFAULT_CUTOFF) -> ConstantResult:
    """Truncated product of 1 - 1/(p(p-1)) over p <= cutoff.

    The omitted factors multiply to at least 1 - sum_{n>P} 1/(n(n-1)) = 1 - 1/P.
    """
    if cutoff_prime < 2:
        raise DomainError("cutoff_prime must be >= 2")
    p = base_primes(cutoff_prime).astype(np.float64)
    value, rounding = _product_from_logs(np.log1p(-1.0 / (p * (p - 1.0))))
    return ConstantResult("s0", value, int(cutoff_prime), 1.0 / cutoff_prime + rounding, Method.EULER_PRODUCT)


def _mu_phi(n_max: int) -> tuple[np.ndarray, np.ndarray]:
    mu = np.ones(n_max + 1, dtype=np.int8)
    phi = np.arange(n_max + 1, dtype=np.int64)
    for p in base_primes(n_max).tolist():
        mu[p::p] *= -1
        if p * p <= n_max:
            mu[p * p :: p * p] = 0
        phi[p::p] -= phi[p::p] // p
    mu[0] = 0
    return mu, phi


def s0_series(n_max: int = 10**6) -> ConstantResult:
    """Partial sum of mu(n) / (n phi(n)) for n <= n_max.

    Tail: sum_{n<=x} n/phi(n) <= C x with C = zeta(2)zeta(3)/zeta(6), so by
    partial summation sum_{n>N} 1/(n phi(n)) <= 2C/N.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    mu, phi = _mu_phi(n_max)
    n = np.arange(n_max + 1, dtype=np.float64)
    keep = mu != 0
    terms = mu[keep] / (n[keep] * phi[keep].astype(np.float64))
    value, rounding = exact_sum([terms])
    tail = 2 * _N_OVER_PHI_MEAN / n_max
    return ConstantResult("s0", value, int(n_max), tail + rounding, Method.DIRICHLET_SERIES)


def zeta2_inverse() -> ConstantResult:
    """6 / pi^2, rounded once from 40-digit arithmetic."""
    with mpmath.workdps(40):
        value = float(6 / mpmath.pi**2)
    return ConstantResult("zeta2inv", value, 0, 0.5 * math.ulp(value), Method.CLOSED_FORM)


def squarefree_density(cutoff_prime: int = DEFAULT_CUTOFF) -> ConstantResult:
    """Truncated product of 1 - 1/p^2, tail bounded by 1/P."""
    p = base_primes(cutoff_prime).astype(np.float64)
    value, rounding = _product_from_logs(np.log1p(-1.0 / (p * p)))
    return ConstantResult("zeta2inv", value, int(cutoff_prime), 1.0 / cutoff_prime + rounding, Method.EULER_PRODUCT)


def _prime_factors(q: int) -> list[int]:
    q = abs(q)
    out = []
    d = 2
    while d * d <= q:
        if q % d == 0:
            out.append(d)
            while q % d == 0:
                q //= d
        d += 1
    if q > 1:
        out.append(q)
    return out


def varpi(p: int, q: int, shifts) -> TupleLocalCount:
    """Residues m mod p^2 with q*m + a = 0 (mod p^2) for at least one shift a."""
    if q == 0:
        raise DomainError("q must be nonzero")
    shifts = tuple(int(a) for a in shifts)
    if len(set(shifts)) != len(shifts):
        raise DomainError("shifts must be distinct")
    p2 = p * p
    if q % p:
        # m = -a / q is a single class per shift
        return TupleLocalCount(p, len({a % p2 for a in shifts}))
    hits = sum(1 for m in range(p2) if any((q * m + a) % p2 == 0 for a in shifts))
    return TupleLocalCount(p, hits)


def correlation_constant(q: int, shifts, cutoff_prime: int = DEFAULT_CUTOFF) -> ConstantResult:
    """Truncated product of 1 - varpi(p)/p^2.

    Primes dividing q are always included, even past the cutoff, so the
    remaining factors all have varpi(p) <= k and the tail is at most k/P.
    """
    shifts = tuple(int(a) for a in shifts)
    if not shifts:
        raise DomainError("need at least one shift")
    if len(set(shifts)) != len(shifts):
        raise DomainError("shifts must be distinct")
    if cutoff_prime < 2:
        raise DomainError("cutoff_prime must be >= 2")
    k = len(shifts)
    spread = max(shifts) - min(shifts)
    primes = base_primes(cutoff_prime)
    counts = np.full(primes.size, k, dtype=np.float64)
    q_primes = set(_prime_factors(q))
    # beyond sqrt(spread) and away from q every shift is its own class
    special = [i for i, p in enumerate(primes.tolist()) if p * p <= spread or p in q_primes]
    for i in special:
        counts[i] = varpi(int(primes[i]), q, shifts).varpi
    extra = sorted(p for p in q_primes if p > cutoff_prime)
    pf = np.concatenate([primes, np.array(extra, dtype=np.int64)]).astype(np.float64)
    counts = np.concatenate([counts, [varpi(p, q, shifts).varpi for p in extra]])
    local = counts / (pf * pf)
    if np.any(local >= 1.0):
        return ConstantResult("correlation", 0.0, int(cutoff_prime), 0.0, Method.EULER_PRODUCT)
    value, rounding = _product_from_logs(np.log1p(-local))
    return ConstantResult("correlation", value, int(cutoff_prime), k / cutoff_prime + rounding, Method.EULER_PRODUCT)


def s1(cutoff_prime: int = DEFAULT_CUTOFF) -> ConstantResult:
    """Density of n with n and n+1 both squarefree."""
    r = correlation_constant(1, (0, 1), cutoff_prime)
    return ConstantResult("s1", r.value, r.cutoff_prime, r.tail_bound, r.method)


def derived_densities(cutoff_prime: int = DEFAULT_CUTOFF) -> tuple[ConstantResult, ConstantResult]:
    """(s2, s3): densities of the (0,0) cell and of each mixed-zero cell.

    s2 = 1 - 2/zeta(2) + s1 and s3 = (1/zeta(2) - s1)/2, evaluated from the
    recomputed 1/zeta(2) and s1.
    """
    z = zeta2_inverse()
    c = s1(cutoff_prime)
    s2 = ConstantResult("s2", 1.0 - 2.0 * z.value + c.value, c.cutoff_prime, c.tail_bound + 2 * z.tail_bound, c.method)
    s3 = ConstantResult("s3", (z.value - c.value) / 2.0, c.cutoff_prime, (c.tail_bound + z.tail_bound) / 2, c.method)
    return s2, s3


def by_name(name: str, cutoff_prime: int | None = None) -> ConstantResult:
    """Lookup used by the command line."""
    name = name.lower()
    cut = cutoff_prime or DEFAULT_CUTOFF
    if name == "s0":
        return s0(cut)
    if name == "s0-series":
        return s0_series(cutoff_prime or 10**6)
    if name == "zeta2inv":
        return zeta2_inverse()
    if name == "zeta2inv-product":
        return squarefree_density(cut)
    if name == "s1":
        return s1(cut)
    if name in ("s2", "s3"):
        s2, s3 = derived_densities(cut)
        return s2 if name == "s2" else s3
    raise KeyError(name)


CONSTANT_NAMES = ("s0", "s0-series", "zeta2inv", "zeta2inv-product", "s1", "s2", "s3")
