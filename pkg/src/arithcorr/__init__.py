"""Exact tables, correlation sums, sign-pattern censuses and Euler-product
constants for the Mobius, Liouville and von Mangoldt functions."""

from .constants import ConstantResult, correlation_constant, derived_densities, s0, varpi, zeta2_inverse
from .correlations import (
    CorrelationResult,
    Domain,
    Fn,
    TermSpec,
    Weight,
    correlate,
    hypothesis_sum,
    identity_audit,
    log_average,
)
from .oracle import check_window, lambda_via_identity, naive_value
from .patterns import PatternCensus, census, densities, joined_counts, signed_combination, weighted_census
from .sieve import FunctionTable, Kind, SumKind, Window, build_table, log_integral, primes_in, summatory

__version__ = "0.1.0"
