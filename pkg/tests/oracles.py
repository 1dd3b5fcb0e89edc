"""Slow, obviously-correct reference computations used only by the tests."""
import math


def is_prime_td(x: int) -> bool:
    if x < 2:
        return False
    for d in range(2, math.isqrt(x) + 1):
        if x % d == 0:
            return False
    return True


def pi_td(x: int) -> int:
    return sum(1 for v in range(2, x + 1) if is_prime_td(v))


def pair_count_enum(members: set, n: int, ordered: bool = True) -> int:
    """Pairs (x, y) from ``members`` with x + y = 2n."""
    pairs = [(x, 2 * n - x) for x in range(1, 2 * n) if x in members and 2 * n - x in members]
    if ordered:
        return len(pairs)
    return len({(min(p), max(p)) for p in pairs})


def odd_primes_upto(x: int) -> set:
    return {v for v in range(3, x + 1) if is_prime_td(v)}
