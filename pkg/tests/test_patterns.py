import itertools

import pytest

from arithcorr.constants import s0
from arithcorr.correlations import Domain, Fn, TermSpec, Weight, correlate
from arithcorr.errors import DomainError, GuardError, QueryError
from arithcorr.patterns import all_keys, census, densities, joined_counts, signed_combination, weighted_census
from arithcorr.sieve import SumKind, summatory


def total(domain, text):
    return correlate(domain, Weight.UNIT, TermSpec.parse(text)).value


def test_key_order():
    assert all_keys(1) == [(1,), (-1,), (0,)]
    assert len(all_keys(3)) == 27


def test_lambda_single_shift_to_ten():
    c = census(Fn.LAMBDA, (0,), Domain.integers(10))
    assert c[(1,)] == 5 and c[(-1,)] == 5 and c[(0,)] == 0


def test_mu_pair_census_1e4_oracle(small_mu):
    expected = {key: 0 for key in all_keys(2)}
    for n in range(1, 10**4 + 1):
        expected[(small_mu[n], small_mu[n + 1])] += 1
    c = census(Fn.MU, (0, 1), Domain.integers(10**4))
    assert c.counts == expected
    assert (c[(1, 1)], c[(1, -1)], c[(-1, 1)], c[(-1, -1)]) == (807, 788, 821, 814)
    assert c[(0, 0)] == 1064
    assert signed_combination(c) == 12


def test_lambda_pair_census_1e4():
    c = census(Fn.LAMBDA, (0, 1), Domain.integers(10**4))
    assert (c[(1, 1)], c[(1, -1)], c[(-1, 1)], c[(-1, -1)]) == (2481, 2472, 2472, 2575)
    assert c.total == 10**4
    assert signed_combination(c) == 112
    assert joined_counts(c) == (5056, 4944)


def test_lambda_short_interval_census():
    c = census(Fn.LAMBDA, (0, 1), Domain.short_interval(10**7, 10**3))
    assert (c[(1, 1)], c[(1, -1)], c[(-1, 1)], c[(-1, -1)]) == (275, 244, 243, 239)
    assert c.total == 1001 and signed_combination(c) == 27


@pytest.mark.parametrize("fn", [Fn.MU, Fn.LAMBDA])
@pytest.mark.parametrize("shifts", [(0,), (1, 3), (-2, 0, 5), (0, 1, 2, 3)])
def test_census_total_is_domain_size(fn, shifts):
    dom = Domain.progression(5000, 3, 1)
    c = census(fn, shifts, dom, segment_size=333)
    assert sum(c.counts.values()) == c.total
    text = ",".join(f"mu2@{a}" for a in shifts)
    assert c.total == correlate(dom, Weight.UNIT, TermSpec.parse(text)).term_count


def test_lambda_zero_cells_empty():
    c = census(Fn.LAMBDA, (0, 2, 5), Domain.integers(3000))
    assert all(n == 0 for key, n in c.counts.items() if 0 in key)


def test_mu_zero_slot_counts_non_squarefree():
    x = 5000
    c = census(Fn.MU, (0, 1), Domain.integers(x))
    zero_first = sum(n for key, n in c.counts.items() if key[0] == 0)
    assert zero_first == x - summatory(SumKind.MU_SQUARED, x)


def test_census_errors():
    with pytest.raises(QueryError):
        census(Fn.MU_SQUARED, (0,), Domain.integers(10))
    with pytest.raises(GuardError):
        census(Fn.MU, (0, 1, 2, 3, 4), Domain.integers(10))
    with pytest.raises(DomainError):
        census(Fn.MU, (1, 1), Domain.integers(10))


@pytest.mark.parametrize("a", [1, 2, 3])
def test_single_shift_mu_over_primes(a):
    dom = Domain.shifted_primes(10**4)
    c = census(Fn.MU, (a,), dom)
    mu2, mu = total(dom, f"mu2@{a}"), total(dom, f"mu@{a}")
    assert 2 * c[(1,)] == mu2 + mu
    assert 2 * c[(-1,)] == mu2 - mu


@pytest.mark.parametrize("a", [1, 2, 3])
def test_single_shift_lambda_over_primes(a):
    dom = Domain.shifted_primes(10**4)
    c = census(Fn.LAMBDA, (a,), dom)
    pi = summatory(SumKind.PRIME_COUNT, 10**4)
    q = total(dom, f"lambda@{a}")
    assert 2 * c[(1,)] == pi + q
    assert 2 * c[(-1,)] == pi - q


def _mu_cell_term(sign, shift):
    # mu^2 + sign * mu^3, with mu^3 written as mu2*mu at the same shift
    return [(1, f"mu2@{shift}"), (sign, f"mu2@{shift},mu@{shift}")]


@pytest.mark.parametrize("s,t", list(itertools.product((1, -1), repeat=2)))
def test_two_shift_mu_cells_over_primes(s, t):
    dom = Domain.shifted_primes(10**4)
    a, b = 1, 3
    c = census(Fn.MU, (a, b), dom)
    rhs = 0
    for (u, left), (v, right) in itertools.product(_mu_cell_term(s, a), _mu_cell_term(t, b)):
        rhs += u * v * total(dom, f"{left},{right}")
    assert 4 * c[(s, t)] == rhs


@pytest.mark.parametrize("s,t", list(itertools.product((1, -1), repeat=2)))
def test_two_shift_lambda_cells_over_primes(s, t):
    dom = Domain.shifted_primes(10**4)
    c = census(Fn.LAMBDA, (1, 3), dom)
    pi = summatory(SumKind.PRIME_COUNT, 10**4)
    rhs = pi + s * total(dom, "lambda@1") + t * total(dom, "lambda@3") + s * t * total(dom, "lambda@1,lambda@3")
    assert 4 * c[(s, t)] == rhs


@pytest.mark.parametrize("fn,shifts,dom", [
    (Fn.MU, (0, 4, 9), Domain.integers(20000)),
    (Fn.LAMBDA, (-1, 2), Domain.prime_progression(30000, 4, 3)),
    (Fn.MU, (2,), Domain.short_interval(10**8, 5000)),
])
def test_signed_combination_is_correlation(fn, shifts, dom):
    c = census(fn, shifts, dom)
    text = ",".join(f"{fn.value.lower()}@{a}" for a in shifts)
    assert signed_combination(c) == total(dom, text)


def test_joined_counts_requires_lambda_pair():
    with pytest.raises(QueryError):
        joined_counts(census(Fn.MU, (0, 1), Domain.integers(100)))


def test_weighted_census_identities():
    x, a = 10**4, 1
    plus, minus = weighted_census(a, x)
    both = correlate(Domain.integers(x), Weight.VON_MANGOLDT, TermSpec.parse(f"mu2@{a}"))
    diff = correlate(Domain.integers(x), Weight.VON_MANGOLDT, TermSpec.parse(f"mu@{a}"))
    assert plus + minus == pytest.approx(both.value, rel=1e-14)
    assert plus - minus == pytest.approx(diff.value, abs=1e-9)


def test_weighted_census_guard():
    with pytest.raises(DomainError):
        weighted_census(1, 99)


def test_density_rows_mu_single():
    rows = densities(census(Fn.MU, (0,), Domain.integers(10**5)))
    assert [r.source for r in rows] == ["zeta2inv/2", "zeta2inv/2", "1-zeta2inv"]
    assert sum(r.density for r in rows) == pytest.approx(1.0)
    for r in rows:
        assert abs(r.density - r.predicted) < 5e-3


def test_density_rows_lambda_pair():
    rows = densities(census(Fn.LAMBDA, (0, 1), Domain.integers(10**5)))
    for r in rows:
        if 0 in r.key:
            assert r.count == 0 and r.predicted == 0.0
        else:
            assert abs(r.density - 0.25) < 1e-2


def test_density_rows_shifted_primes():
    rows = densities(census(Fn.MU, (1,), Domain.shifted_primes(10**5)))
    s = s0().value
    assert rows[0].predicted == pytest.approx(s / 2) and rows[2].predicted is None


def test_density_rows_unpredicted():
    rows = densities(census(Fn.MU, (0, 1, 2), Domain.integers(1000)))
    assert all(r.predicted is None for r in rows)
