"""Prime counting estimates: interval counts, local density, the logarithmic
integral, the density sum and the partial-summation reconstruction of pi(x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import DomainError, InvalidRangeError
from .quadrature import adaptive_simpson
from .series import SumSeries
from .sieve import PrimeSieve, reciprocal_cumsum

_CHUNK = 1 << 22


@dataclass(frozen=True)
class QuadratureSpec:
    """Integration settings for ``li``; the lower limit must stay above 1."""

    lower_limit: float = 2.0
    relative_tolerance: float = 1e-10
    max_refinement_depth: int = 60

    def __post_init__(self):
        if not self.lower_limit > 1:
            raise DomainError(f"lower_limit must be > 1, got {self.lower_limit}")
        if not 0 < self.relative_tolerance < 1e-2:
            raise DomainError(
                f"relative_tolerance must lie in (0, 1e-2), got {self.relative_tolerance}"
            )
        if self.max_refinement_depth < 1:
            raise InvalidRangeError(
                f"max_refinement_depth must be >= 1, got {self.max_refinement_depth}"
            )


DEFAULT_QUADRATURE = QuadratureSpec()


def interval_estimate(x: float, k: float) -> float:
    """Estimated number of primes in ``(x, kx]``: ``x log k / log x``."""
    if x < 2:
        raise DomainError(f"interval_estimate needs x >= 2, got {x}")
    if not k > 1:
        raise DomainError(f"interval_estimate needs k > 1, got {k}")
    return x * math.log(k) / math.log(x)


def local_density(x: float) -> float:
    """``1 / log x``, the chance that an integer near x is prime."""
    if not x > 1:
        raise DomainError(f"local_density needs x > 1, got {x}")
    return 1.0 / math.log(x)


def windowed_density(sieve: PrimeSieve, start: int, width: int) -> float:
    """Average of ``pi(n+1) - pi(n)`` over ``start <= n < start + width``."""
    if width < 1:
        raise InvalidRangeError(f"width must be >= 1, got {width}")
    return (sieve.count(start + width) - sieve.count(start)) / width


def _inv_log(t: float) -> float:
    return 1.0 / math.log(t)


def li(x: float, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Integral of ``1/log t`` from ``spec.lower_limit`` to ``x``."""
    if x < spec.lower_limit:
        raise DomainError(f"li needs x >= {spec.lower_limit}, got {x}")
    return adaptive_simpson(
        _inv_log,
        float(spec.lower_limit),
        float(x),
        spec.relative_tolerance,
        spec.max_refinement_depth,
    )


def density_sum(x: int) -> float:
    """Sum of ``1/log n`` for ``2 <= n <= x - 1``."""
    x = int(x)
    if x < 3:
        raise InvalidRangeError(f"density_sum needs x >= 3, got {x}")
    parts = []
    for a in range(2, x, _CHUNK):
        n = np.arange(a, min(a + _CHUNK, x), dtype=np.float64)
        parts.append(float(np.sum(1.0 / np.log(n))))
    return math.fsum(parts)


def abel_estimate(
    sieve: PrimeSieve, x: int, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """Recover pi(x) from the reciprocal sums ``C(t) = sum_{p<=t} 1/p``.

    Partial summation with weights ``1/p`` on primes and ``f(t) = t`` gives
    ``x C(x) - integral_2^x C(t) dt``. ``C`` is a step function, so the
    integral is the exact sum of rectangles between consecutive primes and
    ``spec`` plays no part in the result.
    """
    x = int(x)
    if x < 3:
        raise InvalidRangeError(f"abel_estimate needs x >= 3, got {x}")
    primes = sieve.primes(x)
    c = reciprocal_cumsum(primes)
    widths = np.diff(np.append(primes, x)).astype(np.float64)
    area = math.fsum((c * widths).tolist())
    return x * float(c[-1]) - area


def comparison_table(
    sieve: PrimeSieve, xs: Sequence[int], spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> list[SumSeries]:
    """pi(x) against li(x), x/log x and the density sum, with relative errors.

    Series are labelled ``pi``, ``li``, ``x_over_log_x``, ``density_sum``,
    ``li_rel_err`` and ``xlog_rel_err``; the relative errors are signed,
    ``(estimate - pi) / pi``.
    """
    xs = sorted(set(int(x) for x in xs))
    labels = ("pi", "li", "x_over_log_x", "density_sum", "li_rel_err", "xlog_rel_err")
    if not xs:
        return [SumSeries(label, ()) for label in labels]
    if xs[0] < 3:
        raise InvalidRangeError(f"comparison_table needs every x >= 3, got {xs[0]}")
    pis = [sieve.count(x) for x in xs]
    lis = [li(x, spec) for x in xs]
    xlog = [x / math.log(x) for x in xs]
    dens = [density_sum(x) for x in xs]
    cols = {
        "pi": pis,
        "li": lis,
        "x_over_log_x": xlog,
        "density_sum": dens,
        "li_rel_err": [(a - p) / p for a, p in zip(lis, pis)],
        "xlog_rel_err": [(a - p) / p for a, p in zip(xlog, pis)],
    }
    return [SumSeries.from_arrays(label, xs, cols[label]) for label in labels]
