"""Slow, obviously-correct reference computations used by the tests.

None of these share code with primelab; they exist so the fast paths can be
checked against something written the naive way.
"""

import math
from fractions import Fraction

import numpy as np


def is_prime_trial(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def primes_trial(limit):
    return [n for n in range(2, limit + 1) if is_prime_trial(n)]


def omega_trial(n, multiplicity=False):
    count, d = 0, 2
    while d * d <= n:
        if n % d == 0:
            count += 1
            n //= d
            while n % d == 0:
                if multiplicity:
                    count += 1
                n //= d
        d += 1
    return count + (1 if n > 1 else 0)


def reciprocal_sum_exact(limit):
    return sum((Fraction(1, p) for p in primes_trial(limit)), Fraction(0))


def harmonic_exact(x):
    return sum((Fraction(1, n) for n in range(1, x + 1)), Fraction(0))


def li_fixed_grid(x, lower=2.0, panels=4000, order=10):
    """Integral of 1/log t from lower to x by fixed-grid Gauss-Legendre.

    Substituting t = exp(u) turns the integrand into exp(u)/u, which is
    smooth on [log lower, log x]; ``panels`` equal panels with an
    ``order``-point rule each give far more accuracy than the tests need.
    """
    nodes, weights = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(math.log(lower), math.log(x), panels + 1)
    a, b = edges[:-1, None], edges[1:, None]
    u = 0.5 * (b - a) * nodes + 0.5 * (a + b)
    vals = np.exp(u) / u
    return math.fsum((0.5 * (b - a) * (vals * weights)).ravel().tolist())


def abel_by_hand(primes, x):
    """x*C(x) - integral_2^x C(t) dt, stepping through every integer interval."""
    c = Fraction(0)
    integral = Fraction(0)
    pset = set(primes)
    for n in range(2, x):
        if n in pset:
            c += Fraction(1, n)
        integral += c  # C is constant on [n, n+1)
    if x in pset:
        c += Fraction(1, x)
    return x * c - integral
