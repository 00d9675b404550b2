import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import harmonic_exact, primes_trial, reciprocal_sum_exact
from primelab import (
    DomainError,
    InvalidRangeError,
    SumSeries,
    TruncationSpec,
    build_sieve,
    euler_product_truncated,
    gamma_estimate,
    harmonic_sum,
    loglog_comparison,
    prime_power_tail,
    zeta_partial_sum,
    zeta_tail_corrected,
)
from primelab.series import gamma_curve


def test_sum_series_invariants():
    s = SumSeries("a", ((1, 2.0), (3, 4.0)))
    assert s.xs == [1, 3] and s.values == [2.0, 4.0]
    with pytest.raises(InvalidRangeError):
        SumSeries("a", ((1, 2.0), (1, 4.0)))
    with pytest.raises(DomainError):
        SumSeries("a", ((1, float("nan")),))
    with pytest.raises(DomainError):
        SumSeries.from_arrays("a", [1, 2], [1.0, float("inf")])
    assert len(SumSeries("empty", ())) == 0


def test_harmonic_sum():
    assert harmonic_sum(1) == 1.0
    assert harmonic_sum(4) == pytest.approx(25 / 12, abs=1e-15)
    for x in (7, 50, 999):
        assert harmonic_sum(x) == pytest.approx(float(harmonic_exact(x)), rel=1e-15)
    assert harmonic_sum(10**6) - math.log(10**6) == pytest.approx(0.577216, abs=1e-6)
    with pytest.raises(InvalidRangeError):
        harmonic_sum(0)


def test_gamma_estimate_examples():
    assert gamma_estimate(2) == pytest.approx(1.5 - math.log(2), abs=1e-15)
    assert gamma_estimate(2) == pytest.approx(0.8069, abs=1e-4)
    assert gamma_estimate(10) == pytest.approx(0.6263, abs=1e-4)
    with pytest.raises(InvalidRangeError):
        gamma_estimate(1)


def test_gamma_curve_matches_direct_evaluation():
    curve = gamma_curve(5000)
    for x in (2, 3, 10, 99, 1234, 5000):
        exact = float(harmonic_exact(x)) - math.log(x)
        assert curve[x - 2] == pytest.approx(exact, abs=1e-13)
        assert curve[x - 2] == pytest.approx(gamma_estimate(x), abs=1e-13)


def test_gamma_curve_strictly_decreasing_in_unit_interval():
    curve = gamma_curve(10**6)
    assert np.all(np.diff(curve) < 0)
    assert curve.min() > 0 and curve.max() < 1
    assert curve[-1] == pytest.approx(float(mpmath.euler), abs=1e-6)


def test_zeta_partial_sum():
    assert zeta_partial_sum(2, 1) == 1.0
    assert zeta_partial_sum(2, 2) == 1.25
    zeta2 = float(mpmath.zeta(2))
    n = 10**6
    partial = zeta_partial_sum(2, n)
    # The tail beyond n lies between 1/(n+1) and 1/n.
    assert zeta2 - 1 / n < partial < zeta2 - 1 / (n + 1)
    assert partial == pytest.approx(1.644933, abs=1.5e-6)
    with pytest.raises(DomainError):
        zeta_partial_sum(1, 10)
    with pytest.raises(InvalidRangeError):
        zeta_partial_sum(2, 0)


@pytest.mark.parametrize("s", [1.5, 2.0, 3.0])
def test_tail_corrected_zeta(s):
    assert zeta_tail_corrected(s, 10**4) == pytest.approx(float(mpmath.zeta(s)), abs=1e-13)


def test_euler_product_examples(sieve_1e6):
    assert euler_product_truncated(TruncationSpec(2, 2), sieve_1e6) == pytest.approx(4 / 3, abs=1e-15)
    assert abs(
        euler_product_truncated(TruncationSpec(2, 100), sieve_1e6) - zeta_partial_sum(2, 10**6)
    ) < 0.01
    assert abs(
        euler_product_truncated(TruncationSpec(3, 1000), sieve_1e6) - zeta_partial_sum(3, 10**6)
    ) < 1e-6
    with pytest.raises(DomainError):
        euler_product_truncated(TruncationSpec(1, 100), sieve_1e6)


def test_euler_product_exact_rational_small_cutoff(small_sieve):
    exact = Fraction(1)
    for p in primes_trial(50):
        exact *= Fraction(p * p, p * p - 1)
    assert euler_product_truncated(TruncationSpec(2, 50), small_sieve) == pytest.approx(
        float(exact), rel=1e-14
    )


@pytest.mark.parametrize("s", [1.5, 2.0, 3.0])
def test_euler_product_monotone_and_below_zeta(s, sieve_1e6):
    cutoffs = [2, 10, 100, 1000, 10**4, 10**5, 10**6]
    vals = [euler_product_truncated(TruncationSpec(s, c), sieve_1e6) for c in cutoffs]
    full = zeta_tail_corrected(s, 10**6)
    assert all(a <= b for a, b in zip(vals, vals[1:]))
    # At s = 3 the gap beyond 10**6 is ~4e-14, inside rounding, so the strict
    # comparisons stop at 10**5.
    assert all(v < full for v in vals[:-1])
    gaps = [full - v for v in vals[:-1]]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))


def _tail_brute(prime_cutoff, term_cutoff):
    return sum(
        Fraction(1, j) * sum(Fraction(1, p**j) for p in primes_trial(prime_cutoff))
        for j in range(2, term_cutoff + 1)
    )


def test_prime_power_tail_small_exact(small_sieve):
    assert prime_power_tail(2, 2, small_sieve) == 0.125
    for pc, tc in [(3, 2), (10, 5), (30, 8)]:
        assert prime_power_tail(pc, tc, small_sieve) == pytest.approx(
            float(_tail_brute(pc, tc)), rel=1e-15
        )


def test_prime_power_tail_converged():
    sieve = build_sieve(2 * 10**6)
    base = prime_power_tail(10**6, 64, sieve)
    # Summing -log(1 - 1/p) - 1/p per prime gives the j -> infinity limit directly.
    closed = math.fsum(
        (-np.log1p(-1.0 / sieve.primes(10**6)) - 1.0 / sieve.primes(10**6)).tolist()
    )
    assert base == pytest.approx(closed, abs=1e-12)
    assert base == pytest.approx(0.3157, abs=1e-4)
    assert abs(prime_power_tail(2 * 10**6, 64, sieve) - base) < 1e-4
    assert abs(prime_power_tail(10**6, 128, sieve) - base) < 1e-4
    assert 0 < base < 1


def test_prime_power_tail_errors(small_sieve):
    with pytest.raises(InvalidRangeError):
        prime_power_tail(1, 10, small_sieve)
    with pytest.raises(InvalidRangeError):
        prime_power_tail(10, 1, small_sieve)


@settings(max_examples=60, deadline=None)
@given(
    p1=st.integers(2, 5000), dp=st.integers(0, 5000),
    t1=st.integers(2, 40), dt=st.integers(0, 40),
)
def test_prime_power_tail_monotone_bounded(small_sieve, p1, dp, t1, dt):
    a = prime_power_tail(p1, t1, small_sieve)
    b = prime_power_tail(min(p1 + dp, 10**4), t1, small_sieve)
    c = prime_power_tail(p1, t1 + dt, small_sieve)
    assert a <= b and a <= c
    assert 0 < a < 1 and b < 1 and c < 1


def test_loglog_comparison_examples(sieve_1e7):
    rec, ll, diff = loglog_comparison(sieve_1e7, [100, 10**4])
    assert [s.label for s in (rec, ll, diff)] == ["recip_sum", "loglog_x", "diff"]
    exact100 = float(reciprocal_sum_exact(100)) - math.log(math.log(100))
    assert diff.values[0] == pytest.approx(exact100, abs=1e-13)
    assert diff.values[0] == pytest.approx(0.2756, abs=1e-4)
    assert 0.25 < diff.values[1] < 0.29


def test_loglog_drift_settles(sieve_1e7):
    xs = [10**3, 3 * 10**3, 10**4, 3 * 10**4, 10**5, 3 * 10**5, 10**6, 3 * 10**6, 10**7]
    diff = loglog_comparison(sieve_1e7, xs)[2].values
    assert max(diff) - min(diff) < 0.02
    assert max(diff) - min(diff) < 0.05


def test_loglog_rejects_small_x(small_sieve):
    with pytest.raises(InvalidRangeError):
        loglog_comparison(small_sieve, [2, 100])
    assert all(len(s) == 0 for s in loglog_comparison(small_sieve, []))
