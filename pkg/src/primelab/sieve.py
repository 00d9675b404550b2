"""Exact prime tables: a segmented odd-only sieve and a distinct-prime-factor sieve.

Everything statistical in primelab is checked against these tables, so they
favour exactness over cleverness. The primality bitmap stores one bit per odd
integer; 2 is handled separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import CapacityError, InvalidRangeError, OutOfRangeError

SIEVE_CEILING = 10**9
OMEGA_CEILING = 10**8

# Odd numbers per prefix-count block. Segments are padded to a multiple of
# this so every block is counted exactly once while building.
_BLOCK_BITS = 512
_BLOCK_BYTES = _BLOCK_BITS // 8


def _small_primes(n: int) -> np.ndarray:
    """Plain sieve of Eratosthenes for the base primes up to ``n``."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


@dataclass(frozen=True, eq=False)
class PrimeSieve:
    """Immutable primality table over ``[2, limit]``.

    Bit ``i`` of ``bits`` (little-endian within each byte) records whether the
    odd number ``2*i + 1`` is prime. ``block_counts[k]`` is the number of set
    bits before block ``k`` of 512 bits, which makes ``count`` O(1) apart from
    one short popcount.
    """

    limit: int
    segment_size: int
    bits: np.ndarray = field(repr=False)
    block_counts: np.ndarray = field(repr=False)

    def _check(self, x: int) -> None:
        if x > self.limit:
            raise OutOfRangeError(f"{x} exceeds sieve limit {self.limit}")

    def is_prime(self, n: int) -> bool:
        n = int(n)
        self._check(n)
        if n < 2:
            return False
        if n % 2 == 0:
            return n == 2
        i = n >> 1
        return bool((self.bits[i >> 3] >> (i & 7)) & 1)

    __contains__ = is_prime

    def count(self, x: int) -> int:
        """Number of primes ``<= x``."""
        x = int(x)
        self._check(x)
        if x < 2:
            return 0
        nbits = (x - 1) // 2 + 1  # odd numbers 1, 3, ..., <= x
        block, rem = divmod(nbits, _BLOCK_BITS)
        total = int(self.block_counts[block])
        if rem:
            start = block * _BLOCK_BYTES
            chunk = np.unpackbits(
                self.bits[start : start + _BLOCK_BYTES], bitorder="little"
            )
            total += int(np.count_nonzero(chunk[:rem]))
        return total + 1  # the prime 2

    def mask(self, upto: int | None = None) -> np.ndarray:
        """Boolean array ``a`` with ``a[n]`` true iff ``n`` is prime, ``0 <= n <= upto``."""
        upto = self.limit if upto is None else int(upto)
        self._check(upto)
        out = np.zeros(max(upto, 0) + 1, dtype=bool)
        if upto < 2:
            return out
        nbits = (upto - 1) // 2 + 1
        odd = np.unpackbits(self.bits[: (nbits + 7) // 8], bitorder="little")[:nbits]
        out[1::2] = odd[: len(out[1::2])]
        out[2] = True
        return out

    def primes(self, upto: int | None = None) -> np.ndarray:
        """All primes ``<= upto`` in increasing order, as ``int64``."""
        upto = self.limit if upto is None else int(upto)
        self._check(upto)
        if upto < 2:
            return np.empty(0, dtype=np.int64)
        nbits = (upto - 1) // 2 + 1
        odd = np.unpackbits(self.bits[: (nbits + 7) // 8], bitorder="little")[:nbits]
        idx = np.flatnonzero(odd).astype(np.int64)
        return np.concatenate(([2], 2 * idx + 1)).astype(np.int64)


def build_sieve(
    limit: int, segment_size: int | None = None, max_limit: int = SIEVE_CEILING
) -> PrimeSieve:
    """Sieve ``[2, limit]`` segment by segment.

    Parameters
    ----------
    limit : int
        Inclusive upper bound, at least 2.
    segment_size : int, optional
        Integers covered per segment. Defaults to ``max(isqrt(limit), 2**15)``.
        Rounded up so each segment holds a whole number of 512-bit blocks.
    max_limit : int
        Capacity ceiling; larger limits raise :class:`CapacityError`.
    """
    limit = int(limit)
    if limit < 2:
        raise InvalidRangeError(f"sieve limit must be >= 2, got {limit}")
    if limit > max_limit:
        raise CapacityError(f"sieve limit {limit} exceeds ceiling {max_limit}")
    root = math.isqrt(limit)
    if segment_size is None:
        segment_size = max(root, 2**15)
    if segment_size < 2:
        raise InvalidRangeError(f"segment_size must be >= 2, got {segment_size}")
    seg_bits = -(-(segment_size // 2 + 1) // _BLOCK_BITS) * _BLOCK_BITS

    base = _small_primes(root)[1:]  # odd base primes
    total_bits = (limit - 1) // 2 + 1
    nsegments = -(-total_bits // seg_bits)
    packed = []
    counts = []
    for s in range(nsegments):
        lo = s * seg_bits  # first odd index in this segment
        hi = lo + seg_bits
        seg = np.ones(seg_bits, dtype=bool)
        if lo == 0:
            seg[0] = False  # 1 is not prime
        if hi > total_bits:
            seg[total_bits - lo :] = False
        lo_num = 2 * lo + 1
        hi_num = 2 * hi - 1
        for p in base:
            p = int(p)
            sq = p * p
            if sq > hi_num:
                break
            start = max(sq, -(-lo_num // p) * p)
            if start % 2 == 0:
                start += p
            seg[(start - 1) // 2 - lo :: p] = False
        counts.append(seg.reshape(-1, _BLOCK_BITS).sum(axis=1))
        packed.append(np.packbits(seg, bitorder="little"))

    bits = np.concatenate(packed)
    block_counts = np.concatenate(([0], np.cumsum(np.concatenate(counts))))
    bits.setflags(write=False)
    block_counts.setflags(write=False)
    return PrimeSieve(limit, segment_size, bits, block_counts)


def prime_count(sieve: PrimeSieve, x: int) -> int:
    """pi(x), the number of primes up to ``x``."""
    if x < 0:
        raise InvalidRangeError(f"x must be >= 0, got {x}")
    return sieve.count(x)


def reciprocal_cumsum(primes: np.ndarray) -> np.ndarray:
    """Running sums of ``1/p``, accumulated smallest prime first."""
    # np.cumsum adds sequentially, which fixes the summation order.
    return np.cumsum(1.0 / primes.astype(np.float64))


def reciprocal_prime_sum(sieve: PrimeSieve, x: int) -> float:
    """Sum of ``1/p`` over primes ``p <= x``."""
    sieve._check(x)
    if x < 2:
        return 0.0
    primes = sieve.primes(x)
    return float(reciprocal_cumsum(primes)[-1])


def twin_pair_count(sieve: PrimeSieve, x: int) -> int:
    """Count of ``n <= x`` with ``n - 2`` and ``n`` both prime."""
    sieve._check(x)
    if x < 5:
        return 0
    primes = sieve.primes(x)
    return int(np.count_nonzero(np.diff(primes) == 2))


def consecutive_pair_count(sieve: PrimeSieve, x: int) -> int:
    """Count of ``n <= x`` with ``n - 1`` and ``n`` both prime."""
    sieve._check(x)
    if x < 3:
        return 0
    primes = sieve.primes(x)
    return int(np.count_nonzero(np.diff(primes) == 1))


@dataclass(frozen=True, eq=False)
class OmegaTable:
    """``omega[n]`` is the number of distinct prime divisors of ``n``.

    With ``multiplicity=True`` the table holds Omega(n) instead, counting
    repeated factors. ``omega[0]`` is meaningless and set to 0.
    """

    limit: int
    omega: np.ndarray = field(repr=False)
    multiplicity: bool = False

    def __getitem__(self, n):
        return self.omega[n]


def build_omega_table(
    limit: int,
    multiplicity: bool = False,
    sieve: PrimeSieve | None = None,
    max_limit: int = OMEGA_CEILING,
) -> OmegaTable:
    """Count prime factors of every ``n <= limit`` by marking multiples."""
    limit = int(limit)
    if limit < 1:
        raise InvalidRangeError(f"omega table limit must be >= 1, got {limit}")
    if limit > max_limit:
        raise CapacityError(f"omega table limit {limit} exceeds ceiling {max_limit}")
    omega = np.zeros(limit + 1, dtype=np.uint8)
    if limit < 2:
        omega.setflags(write=False)
        return OmegaTable(limit, omega, multiplicity)
    if sieve is None or sieve.limit < limit:
        sieve = build_sieve(limit, max_limit=max(max_limit, SIEVE_CEILING))
    primes = sieve.primes(limit)

    # Primes above limit // _FEW have fewer than _FEW multiples; mark those
    # multiplier by multiplier instead of prime by prime.
    few = 64
    split = int(np.searchsorted(primes, limit // few, side="right"))
    for p in primes[:split]:
        omega[p::p] += 1
    large = primes[split:]
    for k in range(1, few + 1):
        large = large[large * k <= limit]
        if len(large) == 0:
            break
        omega[large * k] += 1

    if multiplicity:
        for p in primes[: int(np.searchsorted(primes, math.isqrt(limit), side="right"))]:
            q = int(p) * int(p)
            while q <= limit:
                omega[q::q] += 1
                q *= int(p)
    omega.setflags(write=False)
    return OmegaTable(limit, omega, multiplicity)
