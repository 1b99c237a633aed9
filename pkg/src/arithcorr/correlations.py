"""Weighted sums of products of shifted mu / lambda / mu^2 values.

A query is a domain (which n), a weight (1, Lambda(n) or 1/n) and a
product of factors fn(n + shift).  The domain range is cut into fixed
segments.  Each segment is factored once over the span its shifts reach,
and integer partials add exactly.  Floating terms are gathered and summed
with correct rounding, so answers are identical for any thread count.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from ._reduce import DEFAULT_SEGMENT_SIZE, exact_sum, map_ordered, split_range
from .errors import DomainError, GuardError, QueryError, RangeError
from .sieve import INT64_MAX, Factorization, Window, factor_segment, factor_window, primes_in


class Fn(str, enum.Enum):
    MU = "MU"
    LAMBDA = "LAMBDA"
    MU_SQUARED = "MU_SQUARED"


class DomainKind(str, enum.Enum):
    INTEGERS = "INTEGERS"
    SHIFTED_PRIMES = "SHIFTED_PRIMES"
    SHORT_INTERVAL = "SHORT_INTERVAL"
    ARITH_PROGRESSION = "ARITH_PROGRESSION"
    PRIME_ARITH_PROGRESSION = "PRIME_ARITH_PROGRESSION"


class Weight(str, enum.Enum):
    UNIT = "UNIT"
    VON_MANGOLDT = "VON_MANGOLDT"
    RECIPROCAL = "RECIPROCAL"


@dataclass(frozen=True)
class Domain:
    """Index set of a sum.

    INTEGERS and SHIFTED_PRIMES run over n <= x (primes only for the
    latter); SHORT_INTERVAL is the inclusive [x, x + y]; the progression
    variants keep n = r (mod q).
    """

    kind: DomainKind
    x: int
    y: int = 0
    q: int = 1
    r: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", DomainKind(self.kind))
        for f in ("x", "y", "q", "r"):
            object.__setattr__(self, f, int(getattr(self, f)))
        if self.x < 1:
            raise DomainError("x must be >= 1")
        if self.y < 0:
            raise DomainError("y must be >= 0")
        if self.q < 1 or not 0 <= self.r < self.q:
            raise DomainError("need q >= 1 and 0 <= r < q")

    @classmethod
    def integers(cls, x):
        return cls(DomainKind.INTEGERS, x)

    @classmethod
    def shifted_primes(cls, x):
        return cls(DomainKind.SHIFTED_PRIMES, x)

    @classmethod
    def short_interval(cls, x, y):
        return cls(DomainKind.SHORT_INTERVAL, x, y)

    @classmethod
    def progression(cls, x, q, r):
        return cls(DomainKind.ARITH_PROGRESSION, x, q=q, r=r)

    @classmethod
    def prime_progression(cls, x, q, r):
        return cls(DomainKind.PRIME_ARITH_PROGRESSION, x, q=q, r=r)

    @property
    def primes_only(self) -> bool:
        return self.kind in (DomainKind.SHIFTED_PRIMES, DomainKind.PRIME_ARITH_PROGRESSION)

    @property
    def bounds(self) -> tuple[int, int]:
        if self.kind is DomainKind.SHORT_INTERVAL:
            return self.x, self.x + self.y
        return 1, self.x

    def as_record(self) -> dict:
        rec = {"kind": self.kind.value, "x": self.x}
        if self.kind is DomainKind.SHORT_INTERVAL:
            rec["y"] = self.y
        if self.kind in (DomainKind.ARITH_PROGRESSION, DomainKind.PRIME_ARITH_PROGRESSION):
            rec.update(q=self.q, r=self.r)
        return rec


@dataclass(frozen=True)
class TermSpec:
    """Product of fn(n + shift) over ``factors``; repeated shifts are allowed."""

    factors: tuple[tuple[int, Fn], ...]

    def __post_init__(self):
        facs = tuple((int(s), Fn(f)) for s, f in self.factors)
        if not facs:
            raise QueryError("a term needs at least one factor")
        object.__setattr__(self, "factors", facs)

    @classmethod
    def of(cls, *factors):
        return cls(tuple(factors))

    @classmethod
    def parse(cls, text: str) -> "TermSpec":
        """Parse ``"mu@0,mu2@1,lambda@-2"``."""
        names = {"mu": Fn.MU, "lambda": Fn.LAMBDA, "lam": Fn.LAMBDA, "mu2": Fn.MU_SQUARED, "mu_squared": Fn.MU_SQUARED}
        out = []
        for tok in text.split(","):
            tok = tok.strip()
            if not tok:
                continue
            name, _, shift = tok.partition("@")
            if name.lower() not in names:
                raise QueryError(f"unknown function {name!r}")
            out.append((int(shift or 0), names[name.lower()]))
        return cls(tuple(out))

    @property
    def shifts(self) -> list[int]:
        return [s for s, _ in self.factors]

    def __str__(self) -> str:
        label = {Fn.MU: "mu", Fn.LAMBDA: "lambda", Fn.MU_SQUARED: "mu2"}
        return ",".join(f"{label[f]}@{s}" for s, f in self.factors)


@dataclass
class CorrelationResult:
    domain: Domain
    weight: Weight
    terms: TermSpec
    value: int | float
    term_count: int
    error_bound: float = 0.0
    first_n: int = 1

    def as_record(self) -> dict:
        value = self.value
        if isinstance(value, int) and abs(value) > 2**53:
            value = str(value)
        return {
            "domain": self.domain.as_record(),
            "weight": self.weight.value,
            "terms": str(self.terms),
            "first_n": self.first_n,
            "value": value,
            "error_bound": self.error_bound,
            "term_count": self.term_count,
        }


@dataclass
class Segment:
    """Function values for the n in one segment of a domain."""

    fac: Factorization
    a: int
    b: int
    domain: Domain
    _mask: np.ndarray | None = field(default=None, repr=False)

    @property
    def n(self) -> np.ndarray:
        return np.arange(self.a, self.b + 1, dtype=np.int64)

    def _slice(self, shift: int) -> slice:
        start = self.a + shift - self.fac.lo
        return slice(start, start + self.b - self.a + 1)

    def values(self, fn: Fn, shift: int = 0) -> np.ndarray:
        sl = self._slice(shift)
        if fn is Fn.MU:
            return self.fac.mu[sl]
        if fn is Fn.LAMBDA:
            return self.fac.lam[sl]
        return np.abs(self.fac.mu[sl])

    def product(self, terms: TermSpec) -> np.ndarray:
        out = np.ones(self.b - self.a + 1, dtype=np.int64)
        for shift, fn in terms.factors:
            out *= self.values(fn, shift)
        return out

    @property
    def mask(self) -> np.ndarray:
        if self._mask is None:
            m = np.ones(self.b - self.a + 1, dtype=bool)
            if self.domain.primes_only:
                m &= self.fac.is_prime[self._slice(0)]
            if self.domain.q > 1:
                m &= self.n % self.domain.q == self.domain.r
            self._mask = m
        return self._mask

    def mangoldt(self) -> np.ndarray:
        sl = self._slice(0)
        return np.log(self.fac.pp_base[sl].astype(np.float64))


def scan(
    domain: Domain,
    shifts,
    fn,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> tuple[list, int]:
    """Apply ``fn(segment)`` over the domain, segment by segment, in order.

    The start of the domain is raised so that n + shift >= 1 for every
    shift.  Returns the per-segment results and the first n scanned.
    """
    shifts = list(shifts) + [0]
    lo, hi = domain.bounds
    lo = max(lo, 1 - min(shifts))
    if hi + max(shifts) > INT64_MAX:
        raise RangeError("shifted arguments exceed 2**63 - 1")
    if hi < lo:
        return [], lo
    lo_pad, hi_pad = min(shifts), max(shifts)

    def one(seg):
        a, b = seg
        fac = factor_segment(a + lo_pad, b + hi_pad)
        return fn(Segment(fac, a, b, domain))

    return map_ordered(one, split_range(lo, hi, segment_size), threads), lo


def correlate(
    domain: Domain,
    weight: Weight | str,
    terms: TermSpec,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> CorrelationResult:
    """Sum of weight(n) * prod fn(n + shift) over the domain.

    UNIT sums are exact integers.  VON_MANGOLDT and RECIPROCAL sums are
    correctly rounded sums of the double-precision terms, with a bound on
    the total rounding error.
    """
    weight = Weight(weight)
    if weight is Weight.VON_MANGOLDT and domain.kind not in (DomainKind.INTEGERS, DomainKind.SHORT_INTERVAL):
        raise QueryError("VON_MANGOLDT weight needs an INTEGERS or SHORT_INTERVAL domain")

    def part(seg: Segment):
        prod = seg.product(terms)
        mask = seg.mask
        count = int(np.count_nonzero(mask))
        if weight is Weight.UNIT:
            return int(prod[mask].sum(dtype=np.int64)), count
        keep = mask & (prod != 0)
        if weight is Weight.VON_MANGOLDT:
            w = seg.mangoldt()
            keep &= w > 0
            return w[keep] * prod[keep], count
        return prod[keep] / seg.n[keep].astype(np.float64), count

    parts, first = scan(domain, terms.shifts, part, segment_size=segment_size, threads=threads)
    count = sum(c for _, c in parts)
    if weight is Weight.UNIT:
        return CorrelationResult(domain, weight, terms, sum(v for v, _ in parts), count, 0.0, first)
    value, err = exact_sum(v for v, _ in parts)
    return CorrelationResult(domain, weight, terms, value, count, err, first)


def log_average(terms: TermSpec, x: int, **kw) -> CorrelationResult:
    """Sum over n <= x of prod fn(n + shift) / n."""
    return correlate(Domain.integers(x), Weight.RECIPROCAL, terms, **kw)


DEFAULT_STATE_BUDGET = 10**8


def hypothesis_modulus_limit(x: int, B: float) -> int:
    return int(math.floor(math.sqrt(x) / math.log(x) ** B))


def _max_class_excursion(primes: np.ndarray, values: np.ndarray, q: int) -> int:
    """max over d mod q and z of |sum_{p <= z, p = d (q)} value(p)|."""
    if primes.size == 0:
        return 0
    res = primes % q
    order = np.argsort(res, kind="stable")
    res_s = res[order]
    cs = np.cumsum(values[order])
    starts = np.flatnonzero(np.r_[True, res_s[1:] != res_s[:-1]])
    before = np.where(starts > 0, cs[np.maximum(starts - 1, 0)], 0)
    group = np.repeat(np.arange(starts.size), np.diff(np.r_[starts, res_s.size]))
    prefix = cs - before[group]
    return int(np.abs(prefix).max())


def hypothesis_sum(
    fn: Fn | str,
    shifts,
    x: int,
    B: float,
    *,
    q_max: int | None = None,
    state_budget: int = DEFAULT_STATE_BUDGET,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> int:
    """Sum over q <= sqrt(x)/(log x)^B of the worst residue-class excursion.

    For each modulus q this is max over d mod q and z <= x of
    |sum_{p <= z, p = d (q)} prod fn(p + a)|.  ``q_max`` overrides the
    modulus range.  The value is an exact integer.
    """
    fn = Fn(fn)
    if fn is Fn.MU_SQUARED:
        raise QueryError("hypothesis sums take MU or LAMBDA")
    shifts = tuple(int(a) for a in shifts)
    if not 1 <= len(shifts) <= 2:
        raise QueryError("one or two shifts")
    if x < 100 and q_max is None:
        raise DomainError("x must be >= 100")
    if B < 0:
        raise DomainError("B must be >= 0")
    Q = hypothesis_modulus_limit(x, B) if q_max is None else int(q_max)
    if Q * (Q + 1) // 2 > state_budget:
        raise GuardError(f"{Q * (Q + 1) // 2} residue-class states exceed the budget {state_budget}")
    if Q < 1:
        return 0

    terms = TermSpec(tuple((a, fn) for a in shifts))

    def part(seg: Segment):
        m = seg.mask
        return seg.n[m], seg.product(terms)[m]

    parts, _ = scan(Domain.shifted_primes(x), shifts, part, segment_size=segment_size, threads=threads)
    primes = np.concatenate([p for p, _ in parts]) if parts else np.zeros(0, np.int64)
    values = np.concatenate([v for _, v in parts]) if parts else np.zeros(0, np.int64)
    return sum(map_ordered(lambda q: _max_class_excursion(primes, values, q), range(1, Q + 1), threads))


class Identity(str, enum.Enum):
    MU_EQ_LAMBDA_MUSQ = "MU_EQ_LAMBDA_MUSQ"
    LAMBDA_DIVISOR_SUM = "LAMBDA_DIVISOR_SUM"
    SHIFTED_PRIME_PARTITION = "SHIFTED_PRIME_PARTITION"
    MU_DOUBLE_DECOMPOSITION = "MU_DOUBLE_DECOMPOSITION"
    LAMBDA_DOUBLE_DECOMPOSITION = "LAMBDA_DOUBLE_DECOMPOSITION"


AUDIT_MAX_X = 10**6


@dataclass
class AuditReport:
    which: Identity
    x: int
    shift: int
    lhs: int
    rhs: int
    offending: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs and not self.offending

    def as_record(self) -> dict:
        return {
            "identity": self.which.value,
            "x": self.x,
            "shift": self.shift,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
            "offending": [int(n) for n in self.offending[:20]],
        }


def _squares_upto(limit: int):
    d = 1
    while d * d <= limit:
        yield d
        d += 1


def identity_audit(which: Identity | str, x: int, shift: int = 1) -> AuditReport:
    """Evaluate both sides of an identity by separate routes and compare.

    Pointwise identities report every n where the sides disagree.  For
    summed identities the left side comes from ``correlate`` and the
    right side from the divisor decomposition over d^2 (and e^2).
    """
    which = Identity(which)
    if x < 1 or x > AUDIT_MAX_X:
        raise GuardError(f"audits run for 1 <= x <= {AUDIT_MAX_X}")
    t = int(shift)

    if which in (Identity.MU_EQ_LAMBDA_MUSQ, Identity.LAMBDA_DIVISOR_SUM):
        fac = factor_window(Window(1, x))
        mu = fac.mu.astype(np.int64)
        lam = fac.lam.astype(np.int64)
        if which is Identity.MU_EQ_LAMBDA_MUSQ:
            lhs, rhs = mu, lam * mu * mu
        else:
            lhs, rhs = lam, np.zeros(x, dtype=np.int64)
            for d in _squares_upto(x):
                d2 = d * d
                # n = d^2 m contributes mu(m)
                rhs[d2 - 1 :: d2] += mu[: x // d2]
        bad = np.flatnonzero(lhs != rhs) + 1
        return AuditReport(which, x, t, int(lhs.sum()), int(rhs.sum()), bad.tolist())

    if which is Identity.SHIFTED_PRIME_PARTITION:
        lhs = correlate(Domain.shifted_primes(x), Weight.UNIT, TermSpec.of((t, Fn.MU))).value
        primes = primes_in(Window(max(2, 1 - t), x)) if x >= max(2, 1 - t) else np.zeros(0, np.int64)
        top = x + t
        fac = factor_window(Window(1, max(top, 1)))
        lam_at = fac.lam[primes + t - 1].astype(np.int64)
        rhs = 0
        for d in _squares_upto(top):
            mu_d = int(fac.mu[d - 1])
            if mu_d:
                rhs += mu_d * int(lam_at[(primes + t) % (d * d) == 0].sum())
        return AuditReport(which, x, t, int(lhs), rhs)

    # double decompositions over d^2 | n and e^2 | n + t
    lo = max(1, 1 - t)
    fac = factor_window(Window(1, max(x + t, x)))
    mu = fac.mu.astype(np.int64)
    lam = fac.lam.astype(np.int64)
    if which is Identity.MU_DOUBLE_DECOMPOSITION:
        lhs = correlate(Domain.integers(x), Weight.UNIT, TermSpec.of((0, Fn.MU), (t, Fn.MU))).value
    else:
        lhs = correlate(Domain.integers(x), Weight.UNIT, TermSpec.of((0, Fn.LAMBDA), (t, Fn.LAMBDA))).value
    rhs = 0
    for d in _squares_upto(x):
        d2 = d * d
        n = np.arange(-(-lo // d2) * d2, x + 1, d2, dtype=np.int64)
        if n.size == 0:
            continue
        for e in _squares_upto(x + t):
            e2 = e * e
            sel = n[(n + t) % e2 == 0]
            if sel.size == 0:
                continue
            if which is Identity.MU_DOUBLE_DECOMPOSITION:
                rhs += int(mu[d - 1] * mu[e - 1]) * int((lam[sel - 1] * lam[sel + t - 1]).sum())
            else:
                rhs += int((mu[sel // d2 - 1] * mu[(sel + t) // e2 - 1]).sum())
    return AuditReport(which, x, t, int(lhs), rhs)
