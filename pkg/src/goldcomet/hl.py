"""Hardy-Littlewood estimator for g(n), the Sylvester factor and normalization."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .paircount import PairCountSeries
from .primes import Factorization, PrimeTable, odd_prime_factors

EULER_GAMMA = 0.57721566490153286061
SYLVESTER_1871_FACTOR = 2.0 * math.exp(-EULER_GAMMA)
DEFAULT_PRIME_LIMIT = 10**6


@dataclass(frozen=True)
class HLConstant:
    """Partial product of p(p-2)/(p-1)^2 over odd primes p <= prime_limit.

    ``tail_bound`` bounds the log of the omitted factors:
    sum_{p > P} 1/(p-1)^2 <= 1/(P-1).
    """

    value: float
    prime_limit: int
    tail_bound: float


def hl_constant(primes: PrimeTable, prime_limit: int = DEFAULT_PRIME_LIMIT) -> HLConstant:
    if prime_limit < 3:
        raise ValueError(f"prime_limit must be >= 3, got {prime_limit}")
    if prime_limit > primes.limit:
        raise ValueError(f"prime_limit {prime_limit} exceeds table limit {primes.limit}")
    ps = primes.primes[1 : np.searchsorted(primes.primes, prime_limit, side="right")]
    q = (ps - 1).astype(np.float64)
    # p(p-2)/(p-1)^2 = 1 - 1/(p-1)^2; summing logs keeps the tiny terms
    log_c = math.fsum(np.log1p(-1.0 / (q * q)))
    return HLConstant(math.exp(log_c), prime_limit, 1.0 / (prime_limit - 1))


def sylvester_factor(f: Factorization) -> Fraction:
    """prod (p-1)/(p-2) over the odd primes dividing n; 1 for powers of two."""
    num = den = 1
    for p in f.odd_prime_divisors:
        num *= p - 1
        den *= p - 2
    return Fraction(num, den)


def _check_n(n) -> None:
    if np.any(np.asarray(n) < 3):
        raise ValueError("estimates are defined for n >= 3")


def hl_baseline(n, c: HLConstant):
    """4cn/(ln n)^2, the factor-free part of h(n). Accepts scalars or arrays."""
    _check_n(n)
    n = np.asarray(n, dtype=np.float64)
    out = 4.0 * c.value * n / np.log(n) ** 2
    return float(out) if out.ndim == 0 else out


def hl_estimate(n: int, c: HLConstant, S: Fraction) -> float:
    """h(n) = 4cn/(ln n)^2 * S(n)."""
    return hl_baseline(n, c) * (S.numerator / S.denominator)


def sylvester1871_estimate(n: int, c: HLConstant, S: Fraction) -> float:
    """Sylvester's 1871 variant, 2 e^{-gamma} h(n)."""
    return SYLVESTER_1871_FACTOR * hl_estimate(n, c, S)


def sylvester_factors(primes: PrimeTable, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Numerators and denominators of S(n) for every 0 <= n <= n_max.

    Built multiplicatively by sieving each odd prime over its multiples;
    entries for n = 0 are meaningless and left at 1/1.  Exact while the
    products fit in int64 (n_max far beyond 10^12).
    """
    num = np.ones(n_max + 1, dtype=np.int64)
    den = np.ones(n_max + 1, dtype=np.int64)
    for p in primes.primes[1 : np.searchsorted(primes.primes, n_max, side="right")]:
        p = int(p)
        num[p::p] *= p - 1
        den[p::p] *= p - 2
    return num, den


def hl_series(primes: PrimeTable, n_max: int, c: HLConstant) -> np.ndarray:
    """h(n) for 0 <= n <= n_max (entries below 3 are NaN)."""
    num, den = sylvester_factors(primes, n_max)
    out = np.full(n_max + 1, np.nan)
    n = np.arange(3, n_max + 1)
    out[3:] = hl_baseline(n, c) * num[3:] / den[3:]
    return out


def normalize(g: PairCountSeries, primes: PrimeTable) -> np.ndarray:
    """G(n) = g(n) / S(n), indexed by n like ``g.counts`` (NaN below n_min)."""
    num, den = sylvester_factors(primes, g.n_max)
    out = np.full(g.n_max + 1, np.nan)
    sl = slice(g.n_min, g.n_max + 1)
    # g*den is exact in int64; one rounding at the division
    out[sl] = (g.counts[sl] * den[sl]) / num[sl]
    return out


def sylvester_factor_of(primes: PrimeTable, n: int) -> Fraction:
    return sylvester_factor(odd_prime_factors(primes, n))
