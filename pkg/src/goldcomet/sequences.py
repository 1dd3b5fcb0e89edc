"""Odd-integer sequence families r, s, t, u, v, w and their counting functions.

r and s shift the primes; t and u round the nth-prime asymptotics
(h+1) ln(h+1) and y_k = (k+1) ln((k+1) ln(k+1)) to odd integers; v and w
pick one odd integer per interval [y_k, y_{k+1}) or [x_j, x_{j+1}), where
x_j is the root of x / (ln x - 1) = 7 + j beyond e^2.

Pseudorandom choices use xorshift64* seeded through splitmix64 (all
arithmetic mod 2**64)::

    splitmix64(z): z += 0x9E3779B97F4A7C15
                   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
                   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
                   return z ^ (z >> 31)
    state = splitmix64(seed), or 0x9E3779B97F4A7C15 if that is 0
    next():        state ^= state >> 12
                   state ^= state << 25
                   state ^= state >> 27
                   return state * 0x2545F4914F6CDD1D

One value is drawn for every interval, in interval order, and the chosen
candidate is ``candidates[(next() >> 32) % len(candidates)]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .primes import OutOfRange, PrimeTable, primorial

MASK64 = (1 << 64) - 1
E2 = math.exp(2.0)
FAMILIES = ("r", "s", "t", "u", "v", "w")
STRATEGIES = ("max-odd", "min-odd", "pseudorandom")
COMPOSITE_BIASES = ("none", "max")
DEFAULT_COPRIME_INDEX = 8
ROOT_TOL = 1e-9


# -- real sequences --------------------------------------------------------

def a_seq(h):
    """a_h = (h+1) ln(h+1)."""
    h = np.asarray(h, dtype=np.float64)
    return (h + 1) * np.log(h + 1)


def y_seq(k):
    """y_k = (k+1) ln((k+1) ln(k+1))."""
    k = np.asarray(k, dtype=np.float64)
    return (k + 1) * np.log((k + 1) * np.log(k + 1))


def f_dusart(x):
    """x / (ln x - 1); increasing for x > e^2."""
    x = np.asarray(x, dtype=np.float64)
    return x / (np.log(x) - 1.0)


def odd_adjust(v):
    v = np.asarray(v, dtype=np.int64)
    return v + (1 - v % 2)


def solve_x(j: int, tol: float = ROOT_TOL) -> float:
    """The root x_j > e^2 of x / (ln x - 1) = 7 + j, by bisection."""
    if j < 1:
        raise ValueError(f"j must be >= 1, got {j}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    target = 7.0 + j
    lo = E2 + 1.0
    hi = target * (math.log(target * math.log(target)) + 2.0)
    f = lambda x: x / (math.log(x) - 1.0) - target  # noqa: E731
    if f(lo) > 0:
        # f(e^2 + 1) ~ 7.6 only exceeds targets below 8, which j >= 1 excludes
        raise ArithmeticError(f"lower bracket fails for j={j}")
    while f(hi) < 0:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) <= tol:
            return mid
        if fm < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 4 * math.ulp(mid):
            break
    mid = 0.5 * (lo + hi)
    if abs(f(mid)) > tol:
        raise ArithmeticError(f"bisection for x_{j} stalled at residual {f(mid):.3g}")
    return mid


# -- pseudorandom ----------------------------------------------------------

def splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        self.state = splitmix64(seed & MASK64) or 0x9E3779B97F4A7C15

    def next(self) -> int:
        s = self.state
        s ^= s >> 12
        s ^= (s << 25) & MASK64
        s ^= s >> 27
        self.state = s
        return (s * 0x2545F4914F6CDD1D) & MASK64

    def below(self, n: int) -> int:
        return (self.next() >> 32) % n


# -- sequences -------------------------------------------------------------

@dataclass(frozen=True)
class Recipe:
    family: str
    strategy: str | None = None
    seed: int | None = None
    coprime_index: int | None = None
    composite_bias: str | None = None

    def tag(self) -> str:
        parts = [self.family]
        if self.strategy is not None:
            s = self.strategy
            if self.strategy == "pseudorandom":
                s += f"(seed={self.seed})"
            parts.append(s)
        if self.coprime_index is not None:
            parts.append(f"coprime(h={self.coprime_index},bias={self.composite_bias})")
        return ":".join(parts)


@dataclass(frozen=True, eq=False)
class OddSequence:
    """Strictly increasing odd integers; complete for every value <= coverage_limit."""

    recipe: Recipe
    elements: np.ndarray = field(repr=False)
    coverage_limit: int
    deviations: tuple[int, ...] = ()  # 1-based indices that fell outside their interval

    def __post_init__(self):
        e = self.elements
        if e.size and (np.any(e % 2 == 0) or np.any(np.diff(e) <= 0)):
            raise ValueError(f"{self.id}: elements must be odd and strictly increasing")

    @property
    def id(self) -> str:
        return self.recipe.tag()

    def __len__(self):
        return int(self.elements.size)

    def __getitem__(self, i: int) -> int:
        """1-based element access."""
        if i < 1:
            raise IndexError(i)
        return int(self.elements[i - 1])


def seq_pi(seq: OddSequence, x: int) -> int:
    """Number of elements not exceeding x."""
    if x > seq.coverage_limit:
        raise OutOfRange(f"x={x} beyond coverage {seq.coverage_limit} of {seq.id}")
    return int(np.searchsorted(seq.elements, x, side="right"))


def _make(recipe, elements, deviations=()):
    elements = np.asarray(elements, dtype=np.int64)
    return OddSequence(recipe, elements, int(elements[-1]) if elements.size else 0, tuple(deviations))


def _need_primes(primes: PrimeTable, count: int) -> np.ndarray:
    if primes.primes.size < count:
        raise OutOfRange(f"need {count} primes, table up to {primes.limit} has {primes.primes.size}")
    return primes.primes[:count]


def seq_r(primes: PrimeTable, count: int) -> OddSequence:
    """r_1 = 3, r_i = p_i + 2."""
    ps = _need_primes(primes, count).copy()
    out = ps + 2
    out[0] = 3
    return _make(Recipe("r"), out)


def seq_s(primes: PrimeTable, count: int) -> OddSequence:
    """s_1 = 3, s_2 = 5, then p_i + 2 for p_i = 5 (mod 6) and p_i + 4 for p_i = 1 (mod 6)."""
    ps = _need_primes(primes, count)
    tail = ps[2:]
    r6 = tail % 6
    assert np.all((r6 == 1) | (r6 == 5))
    out = np.concatenate(([3, 5], np.where(r6 == 5, tail + 2, tail + 4)))[:count]
    return _make(Recipe("s"), out)


def seq_t(count: int) -> OddSequence:
    """t_h = odd-adjust(floor(a_{h+1}))."""
    if count < 1:
        raise ValueError("count must be >= 1")
    h = np.arange(1, count + 1)
    return _make(Recipe("t"), odd_adjust(np.floor(a_seq(h + 1))))


def seq_u(count: int) -> OddSequence:
    """u_k = odd-adjust(floor(y_{k+1}))."""
    if count < 1:
        raise ValueError("count must be >= 1")
    k = np.arange(1, count + 1)
    return _make(Recipe("u"), odd_adjust(np.floor(y_seq(k + 1))))


def _coprime_modulus(h: int) -> int:
    if h < 2:
        raise ValueError(f"coprime index must be >= 2, got {h}")
    return primorial(h) // 2


def _choose(groups, recipe: Recipe, primes: PrimeTable | None):
    """One element per candidate group, following the recipe's strategy."""
    rng = XorShift64Star(recipe.seed or 0) if recipe.strategy == "pseudorandom" else None
    modulus = _coprime_modulus(recipe.coprime_index) if recipe.coprime_index is not None else None
    out = []
    for cands in groups:
        if modulus is not None:
            coprime = np.gcd(cands, modulus) == 1
            tiers = [cands[coprime], cands]
            if recipe.composite_bias == "max":
                composite = ~primes.is_prime_mask[cands]
                tiers.insert(0, cands[coprime & composite])
            cands = next(t for t in tiers if t.size)
        if recipe.strategy == "min-odd":
            out.append(cands[0])
        elif recipe.strategy == "max-odd":
            out.append(cands[-1])
        else:
            out.append(cands[rng.below(cands.size)])
    return out


def _check_recipe(recipe: Recipe, primes: PrimeTable | None, limit: int) -> None:
    if recipe.strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {recipe.strategy!r}; choose from {STRATEGIES}")
    if recipe.coprime_index is not None:
        if recipe.composite_bias not in COMPOSITE_BIASES:
            raise ValueError(f"composite_bias must be one of {COMPOSITE_BIASES}")
        if recipe.composite_bias == "max" and (primes is None or primes.limit < limit):
            raise ValueError(f"composite preference needs a prime table up to {limit}")


def _groups_by_bucket(values: np.ndarray, bucket: np.ndarray, first: int, last: int):
    """Split ``values`` (ascending, bucket nondecreasing) into lists for buckets first..last."""
    starts = np.searchsorted(bucket, np.arange(first, last + 2))
    return [values[starts[i]:starts[i + 1]] for i in range(last - first + 1)]


def _recipe(family, strategy, seed, coprime):
    if coprime is None:
        return Recipe(family, strategy, seed if strategy == "pseudorandom" else None)
    h, bias = coprime
    return Recipe(family, strategy, seed if strategy == "pseudorandom" else None, h, bias)


def seq_v(
    count: int,
    strategy: str = "max-odd",
    seed: int = 0,
    coprime: tuple[int, str] | None = None,
    primes: PrimeTable | None = None,
) -> OddSequence:
    """v_1 = 3 and one odd v_k in [y_k, y_{k+1}) for k = 2..count."""
    if count < 1:
        raise ValueError("count must be >= 1")
    recipe = _recipe("v", strategy, seed, coprime)
    y = y_seq(np.arange(1, count + 2))  # y[k-1] = y_k
    limit = int(math.ceil(y[-1]))
    _check_recipe(recipe, primes, limit)
    if count == 1:
        return _make(recipe, [3])
    odds = np.arange(5, limit + 1, 2, dtype=np.int64)
    k = np.searchsorted(y, odds, side="right")  # y_k <= x < y_{k+1}
    groups = _groups_by_bucket(odds, k, 2, count)
    for kk, g in zip(range(2, count + 1), groups):
        if g.size == 0:
            raise ArithmeticError(f"interval [y_{kk}, y_{kk + 1}) holds no odd integer")
    return _make(recipe, [3] + _choose(groups, recipe, primes))


def seq_w(
    count: int,
    strategy: str = "max-odd",
    seed: int = 0,
    coprime: tuple[int, str] | None = None,
    primes: PrimeTable | None = None,
) -> OddSequence:
    """w = 3, 5, 7, 11, then one odd w_{j+4} in [x_j, x_{j+1}) for j >= 1.

    An odd integer w > e^2 lies in [x_j, x_{j+1}) exactly when
    floor(w / (ln w - 1)) = 7 + j, so intervals are filled by bucketing
    odd integers on that value; no root finding is needed here.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    recipe = _recipe("w", strategy, seed, coprime)
    head = [3, 5, 7, 11][:count]
    jmax = count - 4
    if jmax < 1:
        return _make(recipe, head)
    limit = int(math.ceil(solve_x(jmax + 1))) + 1
    _check_recipe(recipe, primes, limit)
    odds = np.arange(9, limit + 1, 2, dtype=np.int64)
    j = np.floor(f_dusart(odds)).astype(np.int64) - 7
    keep = (j >= 1) & (j <= jmax)
    groups = _groups_by_bucket(odds[keep], j[keep], 1, jmax)
    picked = _choose([g for g in groups if g.size], recipe, primes)
    out, deviations, it = list(head), [], iter(picked)
    for jj, g in zip(range(1, jmax + 1), groups):
        if g.size:
            out.append(int(next(it)))
        else:
            # empty interval: smallest unused odd above the previous element
            out.append(out[-1] + 2)
            deviations.append(jj + 4)
    return _make(recipe, out, deviations)


def count_to_cover(family: str, upto: int, primes: PrimeTable | None = None) -> int:
    """Smallest element count whose last element is >= ``upto``."""
    if family in ("r", "s"):
        if primes is None:
            raise ValueError("families r and s need a prime table")
        return int(np.searchsorted(primes.primes, upto, side="left")) + 1
    if family == "t":
        seq = lambda n: a_seq(n + 1)  # noqa: E731
    elif family in ("u", "v"):
        seq = lambda n: y_seq(n + 1)  # noqa: E731
    elif family == "w":
        return 4 + max(1, int(math.ceil(float(f_dusart(max(upto, 9))))) - 7 + 1)
    else:
        raise ValueError(f"unknown family {family!r}")
    lo, hi = 1, 2
    while seq(hi) < upto + 1:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if seq(mid) < upto + 1:
            lo = mid + 1
        else:
            hi = mid
    return lo


def generate(
    family: str,
    upto: int,
    primes: PrimeTable | None = None,
    strategy: str = "max-odd",
    seed: int = 0,
    coprime: tuple[int, str] | None = None,
    margin: int = 64,
) -> OddSequence:
    """A family member whose coverage reaches at least ``upto``."""
    count = count_to_cover(family, upto + margin, primes)
    while True:
        if family == "r":
            seq = seq_r(primes, count)
        elif family == "s":
            seq = seq_s(primes, count)
        elif family == "t":
            seq = seq_t(count)
        elif family == "u":
            seq = seq_u(count)
        elif family == "v":
            seq = seq_v(count, strategy, seed, coprime, primes)
        else:
            seq = seq_w(count, strategy, seed, coprime, primes)
        if seq.coverage_limit >= upto:
            return seq
        count += 16
