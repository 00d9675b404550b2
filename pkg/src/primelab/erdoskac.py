"""Distribution of the number of prime factors over an integer range."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc

from .exceptions import InvalidRangeError
from .sieve import OmegaTable

HIST_EDGES = np.linspace(-4.0, 4.0, 33)  # width 0.25

_CHUNK = 1 << 20
_SQRT2 = math.sqrt(2.0)


def normal_cdf(z):
    """Standard normal CDF, ``0.5 * erfc(-z / sqrt(2))``.

    Going through the complementary error function keeps full relative
    precision in the lower tail, so ``normal_cdf(-z) == 1 - normal_cdf(z)``
    holds to rounding. Accepts scalars or arrays.
    """
    if np.ndim(z) == 0:
        return 0.5 * math.erfc(-float(z) / _SQRT2)
    return 0.5 * erfc(-np.asarray(z, dtype=np.float64) / _SQRT2)


@dataclass
class _Moments:
    """Running count, mean and sum of squared deviations (mergeable)."""

    n: int = 0
    mean: float = 0.0
    m2: float = 0.0

    @classmethod
    def of(cls, values: np.ndarray) -> "_Moments":
        if len(values) == 0:
            return cls()
        mean = float(values.mean())
        return cls(len(values), mean, float(np.sum((values - mean) ** 2)))

    def merge(self, other: "_Moments") -> "_Moments":
        if other.n == 0:
            return self
        if self.n == 0:
            return other
        n = self.n + other.n
        delta = other.mean - self.mean
        mean = self.mean + delta * other.n / n
        m2 = self.m2 + other.m2 + delta * delta * self.n * other.n / n
        return _Moments(n, mean, m2)

    @property
    def variance(self) -> float:
        return self.m2 / self.n if self.n else 0.0


@dataclass(frozen=True)
class DistributionStats:
    """Summary of omega(n) over a range of n.

    ``variance`` is the population variance over the enumerated range.
    ``histogram`` counts the standardized values ``(omega - loglog n) /
    sqrt(loglog n)``: index 0 is the underflow bin below -4, then 32 bins of
    width 0.25 (see ``HIST_EDGES``), then the overflow bin at or above 4.
    ``histogram`` and ``cdf_distance`` are None when standardization is off.
    """

    sample_size: int
    mean: float
    variance: float
    histogram: np.ndarray | None = None
    cdf_distance: float | None = None


def ecdf_sup_distance(values: np.ndarray) -> float:
    """Kolmogorov distance between the empirical CDF of ``values`` and Phi."""
    z = np.sort(np.asarray(values, dtype=np.float64))
    m = len(z)
    if m == 0:
        return 0.0
    phi = normal_cdf(z)
    # Within a run of ties only the run ends matter and the extremes land
    # there automatically: i/m peaks at the last tie, (i-1)/m dips at the first.
    upper = np.arange(1, m + 1) / m - phi
    lower = phi - np.arange(0, m) / m
    return float(min(1.0, max(upper.max(), lower.max(), 0.0)))


def _standardize(n: np.ndarray, omega: np.ndarray) -> np.ndarray:
    ll = np.log(np.log(n.astype(np.float64)))
    return (omega - ll) / np.sqrt(ll)


def _histogram(z: np.ndarray) -> np.ndarray:
    inner = np.histogram(z[(z >= -4.0) & (z < 4.0)], bins=HIST_EDGES)[0]
    return np.concatenate(([np.count_nonzero(z < -4.0)], inner, [np.count_nonzero(z >= 4.0)]))


def omega_stats(
    table: OmegaTable,
    n_min: int,
    n_max: int,
    standardize: bool = True,
    sample_size: int | None = None,
    seed: int = 0,
) -> DistributionStats:
    """Statistics of ``table[n]`` for ``n_min <= n <= n_max``.

    Every n in the range is visited unless ``sample_size`` is given, in which
    case that many n are drawn uniformly (with replacement) using ``seed``.
    Moments and the histogram are computed chunk by chunk and merged, so the
    result does not depend on chunking; the CDF distance needs every
    standardized value at once.
    """
    n_min, n_max = int(n_min), int(n_max)
    if n_min < 2 or n_max < n_min:
        raise InvalidRangeError(f"need 2 <= n_min <= n_max, got [{n_min}, {n_max}]")
    if n_max > table.limit:
        raise InvalidRangeError(f"n_max {n_max} exceeds omega table limit {table.limit}")
    if standardize and n_min < 3:
        raise InvalidRangeError("standardization needs n_min >= 3 (log log 2 < 0)")

    if sample_size is not None:
        if sample_size < 1:
            raise InvalidRangeError(f"sample_size must be >= 1, got {sample_size}")
        rng = np.random.default_rng(seed)
        chunks = [np.sort(rng.integers(n_min, n_max + 1, size=sample_size))]
    else:
        chunks = (
            np.arange(a, min(a + _CHUNK, n_max + 1), dtype=np.int64)
            for a in range(n_min, n_max + 1, _CHUNK)
        )

    moments = _Moments()
    hist = np.zeros(len(HIST_EDGES) + 1, dtype=np.int64)
    zs = []
    for n in chunks:
        w = table.omega[n].astype(np.float64)
        moments = moments.merge(_Moments.of(w))
        if standardize:
            z = _standardize(n, w)
            hist += _histogram(z)
            zs.append(z)

    if not standardize:
        return DistributionStats(moments.n, moments.mean, moments.variance)
    distance = ecdf_sup_distance(np.concatenate(zs))
    return DistributionStats(moments.n, moments.mean, moments.variance, hist, distance)
