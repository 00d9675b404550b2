"""Cramér's random model of the primes.

Each integer ``n >= 2`` joins the random set S independently when a uniform
draw on [0, 1) falls below ``1/log n``. Since ``1/log 2 > 1``, 2 is always in
S; closed-form expectations use the clamped probability ``min(1, 1/log n)``.

Randomness comes from numpy's PCG64. Trial ``i`` of a run seeded with ``seed``
draws from ``SeedSequence(seed, spawn_key=(i,))``, a hashed substream that is
reproducible on its own and independent of every other trial.
"""

from __future__ import annotations

import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exceptions import CapacityError, InvalidRangeError

CRAMER_CEILING = 10**7
GAP_CAP = 256
GENERATOR_ID = "numpy-PCG64/SeedSequence-spawn"

_CHUNK = 1 << 22


@dataclass(frozen=True)
class CramerConfig:
    x_max: int
    trials: int = 200
    seed: int = 0
    generator_id: str = GENERATOR_ID
    max_x: int = field(default=CRAMER_CEILING, repr=False, compare=False)

    def __post_init__(self):
        if self.x_max < 2:
            raise InvalidRangeError(f"x_max must be >= 2, got {self.x_max}")
        if self.x_max > self.max_x:
            raise CapacityError(f"x_max {self.x_max} exceeds ceiling {self.max_x}")
        if self.trials < 1:
            raise InvalidRangeError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise InvalidRangeError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.generator_id != GENERATOR_ID:
            raise InvalidRangeError(
                f"unknown generator {self.generator_id!r}; only {GENERATOR_ID!r} is available"
            )


@dataclass(frozen=True)
class CramerStats:
    """Statistics of one random set S restricted to ``[2, x_max]``.

    ``gap_histogram`` maps each gap ``g <= GAP_CAP`` between consecutive
    members to its frequency; larger gaps are tallied in ``gap_overflow``.
    """

    count: int
    twin_pairs: int
    consecutive_pairs: int
    gap_histogram: dict[int, int]
    gap_overflow: int = 0


def inclusion_probabilities(x_max: int) -> np.ndarray:
    """``min(1, 1/log n)`` for ``n = 2 .. x_max``."""
    n = np.arange(2, x_max + 1, dtype=np.float64)
    return np.minimum(1.0, 1.0 / np.log(n))


def _thresholds(x_max: int) -> np.ndarray:
    # Unclamped, so the rule is literally "alpha_n < 1/log n".
    n = np.arange(2, x_max + 1, dtype=np.float64)
    return 1.0 / np.log(n)


def trial_generator(seed: int, trial_index: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial_index,)))
    )


def _sample(config: CramerConfig, trial_index: int, thresholds: np.ndarray) -> np.ndarray:
    if not 0 <= trial_index < config.trials:
        raise InvalidRangeError(
            f"trial_index must lie in [0, {config.trials}), got {trial_index}"
        )
    rng = trial_generator(config.seed, trial_index)
    alpha = rng.random(config.x_max - 1)
    return np.flatnonzero(alpha < thresholds).astype(np.int64) + 2


def sample(config: CramerConfig, trial_index: int) -> np.ndarray:
    """Members of S for one trial, sorted ascending."""
    return _sample(config, trial_index, _thresholds(config.x_max))


def set_stats(members: np.ndarray) -> CramerStats:
    """Count, pair and gap statistics for a sorted array of members."""
    gaps = np.diff(members)
    hist = np.bincount(gaps[gaps <= GAP_CAP], minlength=GAP_CAP + 1)
    return CramerStats(
        count=int(len(members)),
        twin_pairs=int(_pairs_at_distance(members, 2)),
        consecutive_pairs=int(np.count_nonzero(gaps == 1)),
        gap_histogram={int(g): int(c) for g, c in enumerate(hist) if c},
        gap_overflow=int(np.count_nonzero(gaps > GAP_CAP)),
    )


def _pairs_at_distance(members: np.ndarray, d: int) -> int:
    # n - d and n both in S; they need not be adjacent members when d > 1.
    return int(np.count_nonzero(np.isin(members[members >= 2 + d] - d, members)))


def collect_stats(config: CramerConfig, workers: int = 1) -> list[CramerStats]:
    """Run every trial and return their statistics ordered by trial index."""
    thresholds = _thresholds(config.x_max)

    def one(i: int) -> CramerStats:
        return set_stats(_sample(config, i, thresholds))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, range(config.trials)))
    return [one(i) for i in range(config.trials)]


def aggregate(stats: Sequence[CramerStats]) -> dict[str, dict[str, float]]:
    """Mean and sample variance of each scalar statistic across trials.

    The ``statistics`` module works on the integer counts exactly before
    rounding to float. Variance is 0 for a single trial.
    """
    out = {}
    for name in ("count", "twin_pairs", "consecutive_pairs"):
        values = [getattr(s, name) for s in stats]
        out[name] = {
            "mean": float(statistics.mean(values)),
            "variance": float(statistics.variance(values)) if len(values) > 1 else 0.0,
        }
    return out


def _chunked_fsum(lo: int, hi: int, term) -> float:
    parts = []
    for a in range(lo, hi + 1, _CHUNK):
        n = np.arange(a, min(a + _CHUNK, hi + 1), dtype=np.float64)
        parts.append(float(np.sum(term(n))))
    return math.fsum(parts)


def _q(n: np.ndarray) -> np.ndarray:
    return np.minimum(1.0, 1.0 / np.log(n))


def expected_count(x_max: int) -> float:
    """Exact mean of ``|S ∩ [2, x_max]|`` under the model."""
    if x_max < 2:
        raise InvalidRangeError(f"expected_count needs x_max >= 2, got {x_max}")
    return _chunked_fsum(2, int(x_max), _q)


def count_variance(x_max: int) -> float:
    """Exact variance of the count: sum of ``q (1 - q)`` over independent indicators."""
    if x_max < 2:
        raise InvalidRangeError(f"count_variance needs x_max >= 2, got {x_max}")
    return _chunked_fsum(2, int(x_max), lambda n: _q(n) * (1.0 - _q(n)))


def expected_twin_sum(x_max: int) -> float:
    """Expected number of ``n <= x_max`` with ``n - 2`` and ``n`` both in S.

    This is the divergent series ``sum_{n>=4} 1/(log(n-2) log n)`` with the
    n = 4 term's first factor clamped to 1.
    """
    if x_max < 4:
        raise InvalidRangeError(f"expected_twin_sum needs x_max >= 4, got {x_max}")
    return _chunked_fsum(4, int(x_max), lambda n: _q(n - 2.0) * _q(n))


def expected_consecutive_pairs(x_max: int) -> float:
    """Expected number of ``n <= x_max`` with ``n - 1`` and ``n`` both in S."""
    if x_max < 3:
        raise InvalidRangeError(f"expected_consecutive_pairs needs x_max >= 3, got {x_max}")
    return _chunked_fsum(3, int(x_max), lambda n: _q(n - 1.0) * _q(n))
