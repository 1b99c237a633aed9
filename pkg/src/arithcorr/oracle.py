"""Naive reference evaluations by trial division and direct loops.

Nothing here touches numpy or the sieve module; the point of the oracle
is that it can be wrong only in different ways.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import DomainError, GuardError
from .sieve import FunctionTable, Kind, Window

ORACLE_MAX_N = 10**12
ORACLE_MAX_WIDTH = 10**6


@lru_cache(maxsize=1 << 16)
def trial_factor(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n as ((p, e), ...) with p ascending."""
    out = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def naive_value(kind: Kind | str, n: int):
    """mu, lambda, Omega, Lambda-structure or primality of n, from its factorization.

    MANGOLDT gives ``(p, k)`` for n = p**k and ``None`` otherwise.
    """
    kind = Kind(kind)
    if n < 1:
        raise DomainError(f"n = {n} is outside the domain n >= 1")
    if n > ORACLE_MAX_N:
        raise GuardError(f"n = {n} exceeds the trial-division bound {ORACLE_MAX_N}")
    fac = trial_factor(n)
    if kind is Kind.MU:
        if any(e > 1 for _, e in fac):
            return 0
        return -1 if len(fac) % 2 else 1
    if kind is Kind.LAMBDA:
        return -1 if sum(e for _, e in fac) % 2 else 1
    if kind is Kind.BIG_OMEGA:
        return sum(e for _, e in fac)
    if kind is Kind.IS_PRIME:
        return int(len(fac) == 1 and fac[0][1] == 1)
    return fac[0] if len(fac) == 1 else None


def lambda_via_identity(n: int) -> int:
    """lambda(n) as the divisor sum of mu(n / d^2) over d^2 | n."""
    total = 0
    d = 1
    while d * d <= n:
        if n % (d * d) == 0:
            total += naive_value(Kind.MU, n // (d * d))
        d += 1
    return total


@dataclass
class OracleReport:
    checked_window: Window
    mismatches: list[tuple[int, object, object]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def check_window(kind: Kind | str, window: Window, table: FunctionTable) -> OracleReport:
    """Compare every entry of ``table`` with ``naive_value``."""
    kind = Kind(kind)
    if window.width > ORACLE_MAX_WIDTH:
        raise GuardError(f"oracle check limited to {ORACLE_MAX_WIDTH} entries, got {window.width}")
    report = OracleReport(window)
    for n in range(window.lo, window.hi + 1):
        expected = naive_value(kind, n)
        got = table[n]
        if kind is Kind.IS_PRIME:
            got = int(got)
        if expected != got:
            report.mismatches.append((n, expected, got))
    return report


def naive_primes(lo: int, hi: int) -> list[int]:
    return [n for n in range(max(lo, 2), hi + 1) if naive_value(Kind.IS_PRIME, n)]


_FN = {"MU": lambda n: naive_value(Kind.MU, n),
       "LAMBDA": lambda n: naive_value(Kind.LAMBDA, n),
       "MU_SQUARED": lambda n: naive_value(Kind.MU, n) ** 2}


def naive_product(factors, n: int) -> int:
    """Product of fn(n + shift) over ``factors`` = [(shift, fn_name), ...]."""
    out = 1
    for shift, fn in factors:
        out *= _FN[str(getattr(fn, "value", fn))](n + shift)
    return out
