"""Partial sums around the Euler product: harmonic sums, zeta truncations,
prime-power tails and the reciprocal-prime sum against log log x.

Only convergent truncations are computed here. The divergent s = 1 identities
are represented by their finite pieces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .exceptions import DomainError, InvalidRangeError
from .sieve import PrimeSieve, reciprocal_cumsum

_CHUNK = 1 << 22


@dataclass(frozen=True)
class SumSeries:
    """Labelled sequence of ``(x, value)`` points with strictly increasing x."""

    label: str
    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        points = tuple((x, float(v)) for x, v in self.points)
        for (x0, _), (x1, _) in zip(points, points[1:]):
            if not x1 > x0:
                raise InvalidRangeError(
                    f"series {self.label!r}: x must be strictly increasing ({x0} then {x1})"
                )
        for x, v in points:
            if not math.isfinite(v):
                raise DomainError(f"series {self.label!r}: non-finite value at x={x}")
        object.__setattr__(self, "points", points)

    @classmethod
    def from_arrays(cls, label: str, xs: Iterable, values: Iterable) -> "SumSeries":
        xs = [int(x) if isinstance(x, (int, np.integer)) else float(x) for x in xs]
        return cls(label, tuple(zip(xs, (float(v) for v in values))))

    @property
    def xs(self) -> list:
        return [x for x, _ in self.points]

    @property
    def values(self) -> list[float]:
        return [v for _, v in self.points]

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class TruncationSpec:
    """Cutoffs for a finite Euler product or prime-power tail."""

    s: float
    prime_cutoff: int
    term_cutoff: int = 64

    def __post_init__(self):
        if self.prime_cutoff < 2:
            raise InvalidRangeError(f"prime_cutoff must be >= 2, got {self.prime_cutoff}")
        if self.term_cutoff < 1:
            raise InvalidRangeError(f"term_cutoff must be >= 1, got {self.term_cutoff}")


def _chunked_power_sum(lo: int, hi: int, s: float) -> float:
    """fsum of n**-s for lo <= n <= hi, one numpy chunk at a time."""
    parts = []
    for a in range(lo, hi + 1, _CHUNK):
        n = np.arange(a, min(a + _CHUNK, hi + 1), dtype=np.float64)
        parts.append(float(np.sum(n**-s)))
    return math.fsum(parts)


def harmonic_sum(x: int) -> float:
    """1 + 1/2 + ... + 1/x."""
    if x < 1:
        raise InvalidRangeError(f"harmonic_sum needs x >= 1, got {x}")
    return _chunked_power_sum(1, int(x), 1.0)


def gamma_estimate(x: int) -> float:
    """``harmonic_sum(x) - log(x)``, which decreases towards Euler's constant."""
    if x < 2:
        raise InvalidRangeError(f"gamma_estimate needs x >= 2, got {x}")
    return harmonic_sum(x) - math.log(x)


def gamma_curve(x_max: int) -> np.ndarray:
    """``gamma_estimate`` at every integer in ``[2, x_max]``.

    Built from the exact step ``1/x - log(1 + 1/(x-1))`` rather than by
    differencing two large sums, so the curve stays strictly decreasing in
    floating point out to ``x_max`` around 10**8.
    """
    if x_max < 2:
        raise InvalidRangeError(f"gamma_curve needs x_max >= 2, got {x_max}")
    x = np.arange(3, x_max + 1, dtype=np.float64)
    steps = 1.0 / x - np.log1p(1.0 / (x - 1.0))
    out = np.empty(x_max - 1)
    out[0] = 1.5 - math.log(2.0)
    out[1:] = out[0] + np.cumsum(steps)
    return out


def zeta_partial_sum(s: float, n_max: int) -> float:
    """Sum of ``n**-s`` for ``1 <= n <= n_max``; needs ``s > 1``."""
    if not s > 1:
        raise DomainError(f"zeta_partial_sum needs s > 1, got {s}")
    if n_max < 1:
        raise InvalidRangeError(f"n_max must be >= 1, got {n_max}")
    return _chunked_power_sum(1, int(n_max), float(s))


def zeta_tail_corrected(s: float, n_max: int) -> float:
    """Partial sum plus the Euler-Maclaurin estimate of the omitted tail.

    The tail correction is ``N**(1-s)/(s-1) - N**-s/2 + s*N**(-s-1)/12``;
    the next neglected term is of order ``N**(-s-3)``.
    """
    partial = zeta_partial_sum(s, n_max)
    n = float(n_max)
    tail = n ** (1 - s) / (s - 1) - 0.5 * n**-s + s * n ** (-s - 1) / 12
    return partial + tail


def euler_product_truncated(spec: TruncationSpec, sieve: PrimeSieve) -> float:
    """Product of ``1 / (1 - p**-s)`` over primes ``p <= spec.prime_cutoff``."""
    if not spec.s > 1:
        raise DomainError(f"euler_product_truncated needs s > 1, got {spec.s}")
    primes = sieve.primes(spec.prime_cutoff).astype(np.float64)
    factors = 1.0 / (1.0 - primes**-spec.s)
    return float(np.prod(factors))


def prime_power_tail(prime_cutoff: int, term_cutoff: int, sieve: PrimeSieve) -> float:
    """Sum over ``2 <= j <= term_cutoff`` of ``(1/j) * sum_p p**-j``.

    These are the groups left over after the leading ``sum 1/p`` when
    ``-log(1 - 1/p)`` is expanded as a power series. All inner and outer sums
    use ``math.fsum`` so the result is monotone in both cutoffs.
    """
    if prime_cutoff < 2 or term_cutoff < 2:
        raise InvalidRangeError(
            f"cutoffs must be >= 2, got prime_cutoff={prime_cutoff}, term_cutoff={term_cutoff}"
        )
    primes = sieve.primes(prime_cutoff).astype(np.float64)
    groups = []
    with np.errstate(under="ignore"):
        for j in range(2, term_cutoff + 1):
            terms = primes**-j
            terms = terms[terms > 0.0]
            if len(terms) == 0:
                break
            groups.append(math.fsum(terms.tolist()) / j)
    return math.fsum(groups)


def loglog_comparison(sieve: PrimeSieve, xs: Sequence[int]) -> list[SumSeries]:
    """Reciprocal prime sums next to ``log log x`` and their difference.

    Returns three aligned series labelled ``recip_sum``, ``loglog_x`` and
    ``diff``. Every x must be at least 3.
    """
    xs = sorted(set(int(x) for x in xs))
    if xs and xs[0] < 3:
        raise InvalidRangeError(f"loglog_comparison needs every x >= 3, got {xs[0]}")
    if not xs:
        return [SumSeries(label, ()) for label in ("recip_sum", "loglog_x", "diff")]
    primes = sieve.primes(xs[-1])
    cums = reciprocal_cumsum(primes)
    idx = np.searchsorted(primes, xs, side="right") - 1
    recip = cums[idx]
    loglog = np.log(np.log(np.asarray(xs, dtype=np.float64)))
    return [
        SumSeries.from_arrays("recip_sum", xs, recip),
        SumSeries.from_arrays("loglog_x", xs, loglog),
        SumSeries.from_arrays("diff", xs, recip - loglog),
    ]
