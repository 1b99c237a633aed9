"""Reproduce the published numerical examples and report each check."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

from . import constants
from .correlations import Domain, TermSpec, Weight, correlate
from .patterns import census, signed_combination

LAMBDA_CELLS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


@dataclass
class ReproCheck:
    name: str
    reference: str
    expected: str
    computed: str
    passed: bool


@dataclass
class ReproReport:
    checks: list[ReproCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, reference, expected, computed, passed) -> None:
        self.checks.append(ReproCheck(name, reference, str(expected), str(computed), bool(passed)))

    def records(self) -> list[dict]:
        return [asdict(c) for c in self.checks]


def _census_check(report, name, ref, domain, expected_cells, expected_sum, **kw):
    c = census("LAMBDA", (0, 1), domain, **kw)
    cells = tuple(c[k] for k in LAMBDA_CELLS)
    report.add(name + "_census", ref + " (cells ++,+-,-+,--)", expected_cells, cells, cells == expected_cells)
    report.add(name + "_census_total", ref + " (cells sum to domain size)", sum(expected_cells), c.total,
               c.total == sum(expected_cells))
    report.add(name + "_signed", ref + " (signed cell combination)", expected_sum, signed_combination(c),
               signed_combination(c) == expected_sum)


def repro(*, threads: int = 1, segment_size: int | None = None) -> ReproReport:
    """Run every published-value check; failures become report entries."""
    kw = {"threads": threads}
    if segment_size:
        kw["segment_size"] = segment_size
    report = ReproReport()

    t0 = time.perf_counter()
    r = correlate(Domain.integers(10**4), Weight.UNIT, TermSpec.parse("mu@0,mu@1"), **kw)
    elapsed = time.perf_counter() - t0
    report.add("mu_autocorrelation_1e4", "published mu(n)mu(n+1) sum, n <= 10^4", 12, r.value, r.value == 12)
    report.add("mu_autocorrelation_runtime", "runtime under 1 s", "< 1.0 s", f"{elapsed:.3f} s", elapsed < 1.0)

    r = correlate(Domain.integers(10**4), Weight.UNIT, TermSpec.parse("lambda@0,lambda@1"), **kw)
    report.add("lambda_autocorrelation_1e4", "published lambda(n)lambda(n+1) sum, n <= 10^4", 112, r.value,
               r.value == 112)
    _census_check(report, "lambda_1e4", "published lambda pattern table, n <= 10^4",
                  Domain.integers(10**4), (2481, 2472, 2472, 2575), 112, **kw)

    dom = Domain.short_interval(10**7, 10**3)
    r = correlate(dom, Weight.UNIT, TermSpec.parse("lambda@0,lambda@1"), **kw)
    report.add("lambda_short_interval", "published lambda(n)lambda(n+1) sum on [10^7, 10^7+10^3]", 27, r.value,
               r.value == 27)
    _census_check(report, "lambda_short", "published lambda pattern table on [10^7, 10^7+10^3]",
                  dom, (275, 244, 243, 239), 27, **kw)

    z = constants.zeta2_inverse()
    pub = float(constants.PUBLISHED_DIGITS["zeta2inv"])
    report.add("zeta2inv_published_digits", "published 6/pi^2 digits, tol 1e-15",
               constants.PUBLISHED_DIGITS["zeta2inv"], repr(z.value), abs(z.value - pub) <= 1e-15)

    s1 = constants.correlation_constant(2, (0, 1), 10**5)
    pub = float(constants.PUBLISHED_DIGITS["s1"])
    report.add("s1_truncated_1e5", "published prod_{p<=10^5}(1 - 2/p^2), tol 1e-12",
               constants.PUBLISHED_DIGITS["s1"], repr(s1.value), abs(s1.value - pub) <= 1e-12)

    prod = constants.s0(10**7)
    series = constants.s0_series(10**6)
    gap = abs(prod.value - series.value)
    report.add("s0_product_vs_series", "s0 product (p <= 10^7) vs series (n <= 10^6)",
               f"<= {prod.tail_bound + series.tail_bound:.3e}", f"{gap:.3e}",
               gap <= prod.tail_bound + series.tail_bound)
    digits = f"{prod.value:.12f}"[:9]
    report.add("s0_seven_digits", "published s0, first 7 decimals", "0.3739558", digits, digits == "0.3739558")
    return report
