import math

import mpmath
import numpy as np
import pytest

from oracles import abel_by_hand, li_fixed_grid, primes_trial
from primelab import (
    ConvergenceError,
    DomainError,
    InvalidRangeError,
    QuadratureSpec,
    abel_estimate,
    comparison_table,
    density_sum,
    interval_estimate,
    li,
    local_density,
    prime_count,
)
from primelab.pnt import windowed_density
from primelab.quadrature import adaptive_simpson

# Integral of 1/log t over [2, 10**6], from the fixed-grid Gauss-Legendre
# oracle (agrees with mpmath li(10**6) - li(2) to 1e-9).
LI_1E6_FROM_2 = 78626.50399568


def test_oracle_agrees_with_mpmath():
    assert li_fixed_grid(1e6) == pytest.approx(LI_1E6_FROM_2, abs=1e-7)
    assert li_fixed_grid(1e6) == pytest.approx(
        float(mpmath.li(10**6) - mpmath.li(2)), abs=1e-7
    )


def test_adaptive_simpson_polynomials_and_errors():
    assert adaptive_simpson(lambda t: t**3, 0.0, 2.0) == pytest.approx(4.0, rel=1e-14)
    assert adaptive_simpson(math.exp, 0.0, 1.0, 1e-12) == pytest.approx(math.e - 1, rel=1e-12)
    assert adaptive_simpson(math.sin, 1.0, 1.0) == 0.0
    with pytest.raises(ConvergenceError):
        adaptive_simpson(lambda t: 1.0 / math.sqrt(t), 1e-300, 1.0, 1e-12, max_depth=8)


def test_quadrature_spec_validation():
    with pytest.raises(DomainError):
        QuadratureSpec(lower_limit=1.0)
    with pytest.raises(DomainError):
        QuadratureSpec(relative_tolerance=0.0)
    with pytest.raises(DomainError):
        QuadratureSpec(relative_tolerance=0.02)
    with pytest.raises(InvalidRangeError):
        QuadratureSpec(max_refinement_depth=0)


def test_interval_estimate():
    assert interval_estimate(math.e**2, math.e) == pytest.approx(math.e**2 / 2, rel=1e-15)
    assert interval_estimate(math.e**2, math.e) == pytest.approx(3.6945, abs=1e-4)
    assert interval_estimate(1e5, 1.1) == pytest.approx(827.9, abs=0.05)
    with pytest.raises(DomainError):
        interval_estimate(1e5, 1.0)
    with pytest.raises(DomainError):
        interval_estimate(1.5, 2.0)


def test_interval_estimate_against_primes(sieve_1e6):
    exact = prime_count(sieve_1e6, 110000) - prime_count(sieve_1e6, 100000)
    assert abs(interval_estimate(1e5, 1.1) - exact) / exact < 0.10


@pytest.mark.parametrize("x", [1e3, 1e4, 1e5, 1e6, 1e7])
def test_interval_estimate_recovers_local_density(x):
    est = interval_estimate(x, 1 + 1 / x)
    assert abs(est - local_density(x)) / local_density(x) < 1e-3


def test_local_density():
    assert local_density(math.e) == pytest.approx(1.0, abs=1e-15)
    assert local_density(math.e**2) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(DomainError):
        local_density(1.0)


def test_local_density_as_window_average(sieve_1e6):
    avg = windowed_density(sieve_1e6, 10**5, 10**4)
    assert abs(avg - local_density(1e5)) / local_density(1e5) < 0.15


def test_li_values():
    assert li(2) == 0.0
    assert li(1e6) == pytest.approx(LI_1E6_FROM_2, abs=1e-3)
    for x in (3.0, 10.0, 1e4, 1e7):
        assert li(x) == pytest.approx(li_fixed_grid(x), rel=1e-10)
    with pytest.raises(DomainError):
        li(1.9)


def test_li_against_primes(sieve_1e6):
    assert abs(li(1e6) - prime_count(sieve_1e6, 10**6)) / prime_count(sieve_1e6, 10**6) < 0.005


def test_li_tolerance_halving_is_consistent():
    coarse_tol = 1e-8
    coarse = li(1e6, QuadratureSpec(relative_tolerance=coarse_tol))
    fine = li(1e6, QuadratureSpec(relative_tolerance=coarse_tol / 2))
    assert abs(coarse - fine) / fine < coarse_tol


def test_li_tight_depth_raises():
    with pytest.raises(ConvergenceError):
        li(1e6, QuadratureSpec(relative_tolerance=1e-9, max_refinement_depth=3))


@pytest.mark.parametrize("x", [10.0, 1e3, 1e5, 1e7])
def test_li_derivative_is_local_density(x):
    h = 1e-3 * x
    slope = (li(x + h) - li(x)) / h
    assert abs(slope - local_density(x)) / local_density(x) < 0.01


def test_li_strictly_increasing():
    xs = np.geomspace(2.001, 1e7, 60)
    vals = [li(x) for x in xs]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_density_sum():
    assert density_sum(3) == pytest.approx(1 / math.log(2), abs=1e-15)
    assert density_sum(10) == pytest.approx(math.fsum(1 / math.log(n) for n in range(2, 10)), rel=1e-15)
    assert abs(density_sum(10**4) - li(1e4)) < 1.0
    assert abs(density_sum(10**6) - li(1e6)) < 2.0
    with pytest.raises(InvalidRangeError):
        density_sum(2)


def test_density_sum_minus_li_bounded():
    for x in [3, 10, 100, 10**3, 10**4, 10**5, 10**6, 10**7]:
        assert abs(density_sum(x) - li(x)) < 3


def test_abel_small_cases(small_sieve):
    assert abel_estimate(small_sieve, 3) == pytest.approx(2.0, abs=1e-12)
    assert float(abel_by_hand(primes_trial(3), 3)) == 2.0
    assert abs(abel_estimate(small_sieve, 100) - 25) < 1
    for x in (10, 97, 100, 541):
        assert abel_estimate(small_sieve, x) == pytest.approx(
            float(abel_by_hand(primes_trial(x), x)), abs=1e-9
        )
    with pytest.raises(InvalidRangeError):
        abel_estimate(small_sieve, 2)


def test_abel_reconstructs_pi_everywhere_below_1e4(small_sieve):
    for x in range(3, 10**4 + 1):
        assert abs(abel_estimate(small_sieve, x) - prime_count(small_sieve, x)) < 1


def test_abel_at_1e5(sieve_1e6):
    assert abs(abel_estimate(sieve_1e6, 10**5) - prime_count(sieve_1e6, 10**5)) < 1


def test_comparison_table(sieve_1e6):
    table = comparison_table(sieve_1e6, [10**4, 10**5])
    cols = {s.label: s.values for s in table}
    assert list(cols) == ["pi", "li", "x_over_log_x", "density_sum", "li_rel_err", "xlog_rel_err"]
    assert cols["pi"] == [1229, 9592]
    for i in range(2):
        assert abs(cols["li_rel_err"][i]) < abs(cols["xlog_rel_err"][i])
        assert cols["li_rel_err"][i] == pytest.approx(
            (cols["li"][i] - cols["pi"][i]) / cols["pi"][i], rel=1e-15
        )
    assert all(len(s) == 0 for s in comparison_table(sieve_1e6, []))
