"""Prime sieve and counting services.

The table stores odd numbers only: bit ``i`` of the packed array stands for
``2*i + 1`` and is set when that number is composite (1 counts as composite).
Prime counts are answered from cumulative popcounts over fixed blocks of
``BLOCK`` odd positions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

BLOCK = 512  # odd positions per cumulative-count block (64 packed bytes)
SEGMENTED_ABOVE = 1 << 22
SEGMENT_ODDS = 1 << 18
MAX_PRIMORIAL_INDEX = 15


class OutOfRange(ValueError):
    """Query outside what a table (or sequence) covers."""


def _odd_sieve_plain(limit: int) -> np.ndarray:
    # is_odd_prime[i] <-> 2i+1 prime
    size = (limit + 1) // 2
    flags = np.ones(size, dtype=bool)
    flags[0] = False
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if flags[i]:
            p = 2 * i + 1
            flags[p * p // 2::p] = False
    return flags


def _odd_sieve_segmented(limit: int) -> np.ndarray:
    size = (limit + 1) // 2
    base = _odd_sieve_plain(math.isqrt(limit))
    small = 2 * np.flatnonzero(base) + 1
    flags = np.empty(size, dtype=bool)
    for lo in range(0, size, SEGMENT_ODDS):
        hi = min(lo + SEGMENT_ODDS, size)
        seg = np.ones(hi - lo, dtype=bool)
        lo_val = 2 * lo + 1
        hi_val = 2 * (hi - 1) + 1
        for p in small:
            p = int(p)
            if p * p > hi_val:
                break
            start = max(p * p, ((lo_val + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            seg[(start - lo_val) // 2::p] = False
        flags[lo:hi] = seg
    flags[0] = False
    return flags


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """Immutable primality / pi(x) table up to ``limit``."""

    limit: int
    oddbits: np.ndarray = field(repr=False)  # packed, little bit order, set = composite
    block_counts: np.ndarray = field(repr=False)  # odd primes in blocks [0, k)

    def _odd_flags(self, lo: int, hi: int) -> np.ndarray:
        """Primality flags for odd positions ``lo <= i < hi`` (lo byte-aligned)."""
        raw = np.unpackbits(self.oddbits[lo // 8:(hi + 7) // 8], bitorder="little")
        return raw[: hi - lo] == 0

    def is_prime(self, x: int) -> bool:
        if x < 0 or x > self.limit:
            raise OutOfRange(f"x={x} outside [0, {self.limit}]")
        if x == 2:
            return True
        if x < 2 or x % 2 == 0:
            return False
        i = x // 2
        return not (self.oddbits[i >> 3] >> (i & 7)) & 1

    @cached_property
    def is_prime_mask(self) -> np.ndarray:
        """Boolean array of length ``limit + 1``; entry x is True iff x is prime."""
        mask = np.zeros(self.limit + 1, dtype=bool)
        size = (self.limit + 1) // 2
        mask[1::2] = self._odd_flags(0, size)
        if self.limit >= 2:
            mask[2] = True
        mask.flags.writeable = False
        return mask

    @cached_property
    def primes(self) -> np.ndarray:
        """All primes up to ``limit`` in ascending order (int64)."""
        size = (self.limit + 1) // 2
        odd = 2 * np.flatnonzero(self._odd_flags(0, size)).astype(np.int64) + 1
        out = np.concatenate(([2], odd)).astype(np.int64) if self.limit >= 2 else odd
        out.flags.writeable = False
        return out

    def pi(self, x: int) -> int:
        return prime_count(self, x)


def build_sieve(limit: int) -> PrimeTable:
    """Sieve of Eratosthenes over odd numbers up to ``limit``.

    Limits above ``SEGMENTED_ABOVE`` are sieved in segments of
    ``SEGMENT_ODDS`` odd numbers so the working set stays small.
    """
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    if limit > SEGMENTED_ABOVE:
        flags = _odd_sieve_segmented(limit)
    else:
        flags = _odd_sieve_plain(limit)
    packed = np.packbits(~flags, bitorder="little")
    pad = (-flags.size) % BLOCK
    per_block = np.concatenate((flags, np.zeros(pad, dtype=bool))).reshape(-1, BLOCK).sum(axis=1)
    cumulative = np.concatenate(([0], np.cumsum(per_block))).astype(np.int64)
    packed.flags.writeable = False
    cumulative.flags.writeable = False
    return PrimeTable(limit=limit, oddbits=packed, block_counts=cumulative)


def prime_count(t: PrimeTable, x: int) -> int:
    """pi(x), the number of primes not exceeding ``x``."""
    if x > t.limit:
        raise OutOfRange(f"x={x} exceeds table limit {t.limit}")
    if x < 2:
        return 0
    last = (x - 1) // 2  # odd position of the largest odd <= x
    block = last // BLOCK
    start = block * BLOCK
    partial = int(t._odd_flags(start, last + 1).sum())
    return 1 + int(t.block_counts[block]) + partial


def prime_count_in_class(t: PrimeTable, m: int, a: int, x: int) -> int:
    """Number of primes p <= x with p = a (mod m)."""
    if m < 2 or not 0 <= a < m:
        raise ValueError(f"need m >= 2 and 0 <= a < m, got m={m}, a={a}")
    if x > t.limit:
        raise OutOfRange(f"x={x} exceeds table limit {t.limit}")
    ps = t.primes[: np.searchsorted(t.primes, x, side="right")]
    return int(np.count_nonzero(ps % m == a))


def nth_prime(t: PrimeTable, n: int) -> int:
    """The n-th prime, 1-based (p_1 = 2)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > t.primes.size:
        raise OutOfRange(f"p_{n} lies beyond the table limit {t.limit}")
    return int(t.primes[n - 1])


def primorial(h: int) -> int:
    """Product of the first ``h`` primes."""
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    if h > MAX_PRIMORIAL_INDEX:
        raise OverflowError(f"primorial index {h} > {MAX_PRIMORIAL_INDEX} does not fit in 64 bits")
    return math.prod(first_primes(h))


def first_primes(h: int) -> list[int]:
    out: list[int] = []
    c = 2
    while len(out) < h:
        if all(c % p for p in out if p * p <= c):
            out.append(c)
        c += 1
    return out


@dataclass(frozen=True)
class Factorization:
    n: int
    odd_prime_divisors: tuple[int, ...]


def odd_prime_factors(t: PrimeTable, n: int) -> Factorization:
    """Distinct odd primes dividing ``n``, by trial division with sieved primes."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > t.limit:
        raise OutOfRange(f"n={n} exceeds table limit {t.limit}")
    rest = n
    while rest % 2 == 0:
        rest //= 2
    found = []
    for p in t.primes[1:]:
        p = int(p)
        if p * p > rest:
            break
        if rest % p == 0:
            found.append(p)
            while rest % p == 0:
                rest //= p
    if rest > 1:
        found.append(rest)
    return Factorization(n, tuple(found))
