import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from arithcorr.errors import DomainError, RangeError
from arithcorr.oracle import naive_value
from arithcorr.sieve import (
    FunctionTable,
    Kind,
    SumKind,
    Window,
    build_table,
    factor_window,
    log_integral,
    primes_in,
    summatory,
)


def test_mu_first_ten():
    assert build_table(Kind.MU, Window(1, 10)).values.tolist() == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_lambda_offset_window():
    assert build_table(Kind.LAMBDA, Window(8, 12)).values.tolist() == [-1, 1, 1, -1, -1]


def test_mu_near_ten_million():
    # frozen from trial division
    assert build_table(Kind.MU, Window(10**7, 10**7 + 10)).values.tolist() == [0, 1, 1, 1, 0, -1, 1, 1, 0, 1, 1]


def test_mangoldt_structure():
    t = build_table(Kind.MANGOLDT, Window(1, 10))
    assert [t[n] for n in range(1, 11)] == [None, (2, 1), (3, 1), (2, 2), (5, 1), None, (7, 1), (2, 3), (3, 2), None]


def test_one_is_unit():
    f = factor_window(Window(1, 1))
    assert f.mu[0] == 1 and f.lam[0] == 1 and f.pp_exp[0] == 0 and not f.is_prime[0]


def test_window_errors():
    with pytest.raises(DomainError):
        Window(0, 5)
    with pytest.raises(DomainError):
        Window(6, 5)
    with pytest.raises(RangeError):
        Window(1, 2**63)


def test_table_indexing():
    t = build_table(Kind.BIG_OMEGA, Window(100, 110))
    assert isinstance(t, FunctionTable)
    assert t[100] == 4 and len(t) == 11
    with pytest.raises(IndexError):
        t[99]


@pytest.mark.parametrize("window,expected", [((1, 20), [2, 3, 5, 7, 11, 13, 17, 19]), ((10, 11), [11]), ((24, 28), [])])
def test_primes_in_small(window, expected):
    assert primes_in(Window(*window)).tolist() == expected


def test_prime_count_oracle_1e4():
    count = sum(naive_value(Kind.IS_PRIME, n) for n in range(1, 10**4 + 1))
    assert count == len(primes_in(Window(1, 10**4))) == 1229


def test_prime_count_1e6_two_configurations():
    a = primes_in(Window(1, 10**6))
    b = primes_in(Window(1, 10**6), segment_size=7919, threads=3)
    c = int(build_table(Kind.IS_PRIME, Window(1, 10**6), segment_size=2**16).values.sum())
    assert len(a) == len(b) == c == 78498
    assert np.array_equal(a, b)


def test_summatory_small():
    assert summatory(SumKind.MU, 10) == -1
    assert summatory(SumKind.LAMBDA, 10) == 0
    assert summatory(SumKind.MU_SQUARED, 10) == 7
    assert summatory(SumKind.PRIME_COUNT, 100) == 25


def test_summatory_matches_oracle_upto_1e4(small_mu, small_lam):
    m = l = 0
    checkpoints = {1, 2, 10, 99, 100, 1000, 4321, 10**4}
    for x in range(1, 10**4 + 1):
        m += small_mu[x]
        l += small_lam[x]
        if x in checkpoints:
            assert summatory(SumKind.MU, x) == m
            assert summatory(SumKind.LAMBDA, x) == l


def test_mertens_every_x_upto_1e4(small_mu):
    table = build_table(Kind.MU, Window(1, 10**4)).values.astype(np.int64)
    running = np.cumsum(table)
    expected = np.cumsum(np.array(small_mu[1 : 10**4 + 1]))
    assert np.array_equal(running, expected)


def test_squarefree_density_1e6():
    assert abs(summatory(SumKind.MU_SQUARED, 10**6) / 10**6 - 6 / math.pi**2) < 1e-3


def test_psi_small():
    expected = math.fsum(math.log(p) for p, k in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)])
    assert summatory(SumKind.MANGOLDT_PSI, 10) == pytest.approx(expected, rel=1e-15)


def _ramanujan_li(x):
    with mpmath.workdps(50):
        def li0(v):
            v = mpmath.mpf(v)
            L = mpmath.log(v)
            s = inner = mpmath.mpf(0)
            for n in range(1, 400):
                if n % 2:
                    inner += mpmath.mpf(1) / n
                s += (-1) ** (n - 1) * L**n / (mpmath.factorial(n) * mpmath.mpf(2) ** (n - 1)) * inner
            return mpmath.euler + mpmath.log(L) + mpmath.sqrt(v) * s

        return li0(x) - li0(2)


def test_li_two_is_zero():
    assert log_integral(2) == 0.0


@pytest.mark.parametrize("x,pinned", [(10, 5.1204357246698051526783928634749), (10**6, 78626.503995682064427078066159058)])
def test_li_pinned(x, pinned):
    assert abs(float(_ramanujan_li(x)) - pinned) < 1e-12 * max(1, pinned)
    assert abs(log_integral(x) - pinned) < 1e-9


def test_li_large_is_correctly_rounded():
    exact = _ramanujan_li(10**12)
    got = log_integral(10**12)
    assert abs(mpmath.mpf(got) - exact) <= math.ulp(got) / 2


def test_li_domain():
    with pytest.raises(DomainError):
        log_integral(1.5)


@settings(max_examples=30, deadline=None)
@given(lo=st.integers(1, 10**6), width=st.integers(1, 400), seg=st.integers(1, 97))
def test_segmentation_invariance(lo, width, seg):
    w = Window(lo, lo + width - 1)
    for kind in Kind:
        a = build_table(kind, w).values
        b = build_table(kind, w, segment_size=seg, threads=2).values
        assert np.array_equal(a, b)


@settings(max_examples=25, deadline=None)
@given(lo=st.integers(1, 10**10), width=st.integers(1, 60))
def test_offset_windows_match_trial_division(lo, width):
    w = Window(lo, lo + width - 1)
    for kind in (Kind.MU, Kind.LAMBDA, Kind.BIG_OMEGA):
        t = build_table(kind, w)
        assert [t[n] for n in range(w.lo, w.hi + 1)] == [naive_value(kind, n) for n in range(w.lo, w.hi + 1)]


def test_mu_lambda_musq_full_scan():
    f = factor_window(Window(1, 10**5))
    mu, lam = f.mu.astype(int), f.lam.astype(int)
    assert np.array_equal(mu, lam * mu * mu)
    assert np.array_equal(mu != 0, lam == mu)


def test_lambda_divisor_sum_upto_1e5():
    x = 10**5
    mu = factor_window(Window(1, x)).mu.astype(np.int64)
    rhs = np.zeros(x, dtype=np.int64)
    d = 1
    while d * d <= x:
        rhs[d * d - 1 :: d * d] += mu[: x // (d * d)]
        d += 1
    assert np.array_equal(rhs, factor_window(Window(1, x)).lam)
