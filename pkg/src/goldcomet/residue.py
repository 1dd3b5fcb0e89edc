"""Residue-class layers of the comet.

For a modulus m, sigma_m(c) counts ordered pairs of units (a, b) mod m with
a + b = c.  When m is a primorial the count depends only on gcd(c, m), and
the even divisors of m split [3, N] into the colored strata of the comet.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .primes import MAX_PRIMORIAL_INDEX, PrimeTable, first_primes, primorial

BRUTEFORCE_MAX_M = 10**5

# Colors by ascending sigma rank.  The first eight are the conventional order
# black, red, blue, green, grey, violet, orange, cyan; the rest extend the
# list for the 14 strata of m = 2310.
RANK_COLORS = (
    "black", "red", "blue", "green", "grey", "violet", "orange", "cyan",
    "brown", "magenta", "olive", "navy", "gold", "teal",
)
COLOR_HEX = {
    "black": "#000000", "red": "#e41a1c", "blue": "#1f4fd8", "green": "#1b9e3e",
    "grey": "#8c8c8c", "violet": "#8a2be2", "orange": "#ff8c00", "cyan": "#00bcd4",
    "brown": "#8b4513", "magenta": "#d81b60", "olive": "#808000", "navy": "#000080",
    "gold": "#c9a400", "teal": "#008080", "lightgrey": "#c8c8c8", "darkgrey": "#505050",
}


class BudgetExceeded(ValueError):
    pass


def class_divisor(a: int, m: int) -> int:
    """div(a) = gcd(a mod m, m); the zero class has divisor m."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return math.gcd(a % m, m)


def _prime_divisors(m: int, primes: PrimeTable | None) -> list[int]:
    out = []
    rest = m
    candidates = primes.primes if primes is not None and primes.limit >= math.isqrt(m) else None
    if candidates is None:
        p = 2
        while p * p <= rest:
            if rest % p == 0:
                out.append(p)
                while rest % p == 0:
                    rest //= p
            p += 1
    else:
        for p in candidates:
            p = int(p)
            if p * p > rest:
                break
            if rest % p == 0:
                out.append(p)
                while rest % p == 0:
                    rest //= p
    if rest > 1:
        out.append(rest)
    return out


def sigma_general(m: int, c: int, primes: PrimeTable | None = None) -> int:
    """Number of ordered unit pairs (a, b) mod m with a + b = c (mod m).

    m * prod_{p | m, p | c} (1 - 1/p) * prod_{p | m, p does not divide c} (1 - 2/p),
    evaluated in exact integers: divide m by p first, then multiply.
    """
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    out = m
    for p in _prime_divisors(m, primes):
        out = out // p * ((p - 1) if c % p == 0 else (p - 2))
    return out


@lru_cache(maxsize=16)
def _pair_sum_histogram(m: int) -> np.ndarray:
    units = np.array([a for a in range(m) if math.gcd(a, m) == 1], dtype=np.int64)
    sums = (units[:, None] + units[None, :]) % m
    return np.bincount(sums.ravel(), minlength=m)


def sigma_bruteforce(m: int, c: int) -> int:
    """sigma_m(c) by enumerating every pair of units."""
    if m > BRUTEFORCE_MAX_M:
        raise BudgetExceeded(f"m={m} exceeds the enumeration budget {BRUTEFORCE_MAX_M}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if m == 1:
        return 1
    return int(_pair_sum_histogram(m)[c % m])


def _check_index(h: int) -> None:
    if h < 1:
        raise ValueError(f"primorial index must be >= 1, got {h}")
    if h > MAX_PRIMORIAL_INDEX:
        raise OverflowError(f"primorial index {h} > {MAX_PRIMORIAL_INDEX}")


def sigma_primorial(h: int, d: int) -> int:
    """sigma_m(d) for m = primorial(h) from the exponent pattern of d.

    Each odd p_i contributes p_i - 1 when it divides d, else p_i - 2.
    """
    _check_index(h)
    if h < 2:
        raise ValueError("sigma_primorial needs h >= 2")
    m = primorial(h)
    if d <= 0 or d % 2 or m % d:
        raise ValueError(f"{d} is not an even divisor of {m}")
    out = 1
    for p in first_primes(h)[1:]:
        out *= (p - 1) if d % p == 0 else (p - 2)
    return out


def even_divisors(h: int) -> list[int]:
    """All 2^(h-1) even divisors of primorial(h), ascending."""
    _check_index(h)
    divs = [2]
    for p in first_primes(h)[1:]:
        divs += [d * p for d in divs]
    return sorted(divs)


@dataclass(frozen=True)
class SigmaRow:
    d: int
    sigma: int
    stratum_rank: int
    color: str


@dataclass(frozen=True)
class SigmaTable:
    h: int
    m: int
    rows: tuple[SigmaRow, ...]

    @property
    def distinct(self) -> int:
        return len({r.sigma for r in self.rows})

    def row(self, d: int) -> SigmaRow:
        for r in self.rows:
            if r.d == d:
                return r
        raise KeyError(d)


def strata(h: int) -> SigmaTable:
    """Even divisors of primorial(h) with sigma and a shared rank per sigma value."""
    _check_index(h)
    m = primorial(h)
    if h == 1:
        # m = 2: the single even class is 1 + 1
        return SigmaTable(1, 2, (SigmaRow(2, 1, 0, RANK_COLORS[0]),))
    divs = even_divisors(h)
    sigmas = [sigma_primorial(h, d) for d in divs]
    ranks = {s: i for i, s in enumerate(sorted(set(sigmas)))}
    rows = tuple(
        SigmaRow(d, s, ranks[s], RANK_COLORS[ranks[s]] if ranks[s] < len(RANK_COLORS) else "")
        for d, s in zip(divs, sigmas)
    )
    return SigmaTable(h, m, rows)


@dataclass(frozen=True)
class LayerKey:
    n: int
    d: int
    sigma: int
    stratum_rank: int


def classify(n: int, table: SigmaTable) -> LayerKey:
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    d = math.gcd(2 * n, table.m)
    row = table.row(d)
    return LayerKey(n, d, row.sigma, row.stratum_rank)


def classify_range(n_min: int, n_max: int, table: SigmaTable) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized ``classify`` for every n in [n_min, n_max]: (d, sigma, rank)."""
    n = np.arange(n_min, n_max + 1, dtype=np.int64)
    d = np.gcd(2 * n, table.m)
    lookup_d = np.array([r.d for r in table.rows], dtype=np.int64)
    pos = np.searchsorted(lookup_d, d)
    sig = np.array([r.sigma for r in table.rows], dtype=np.int64)[pos]
    rank = np.array([r.stratum_rank for r in table.rows], dtype=np.int64)[pos]
    return d, sig, rank


def count_class_pair_reps(
    E: int, m: int, a: int, b: int, min_val: int, convention: str = "ordered"
) -> int:
    """Count (x, y) with x = a, y = b (mod m), x and y odd, both >= min_val, x + y = E.

    ``ordered`` counts every (x, y) with x from class a and y from class b.
    ``unordered`` identifies (x, y) with (y, x) when both orders qualify.
    """
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if convention not in ("ordered", "unordered"):
        raise ValueError(f"unknown convention {convention!r}")
    seen = set()
    count = 0
    start = min_val + (a - min_val) % m
    for x in range(start, E - min_val + 1, m):
        y = E - x
        if x % 2 == 0 or y % 2 == 0 or (y - b) % m:
            continue
        if convention == "unordered":
            key = (min(x, y), max(x, y))
            if key in seen:
                continue
            seen.add(key)
        count += 1
    return count
