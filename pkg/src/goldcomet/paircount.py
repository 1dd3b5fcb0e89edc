"""Goldbach pair counts g(n) and correlated counts g_X(n) over [3, N].

Two independent backends compute the same series:

* ``goldbach_series_bitset`` walks the source elements x <= n and tests the
  partner bit 2n - x (numba, parallel over n).
* ``goldbach_series_convolution`` squares the real FFT of the 0/1 indicator;
  the self-convolution at index 2n is the ordered pair count.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Literal

import numba
import numpy as np

from .primes import PrimeTable

if TYPE_CHECKING:
    from .sequences import OddSequence

Convention = Literal["ordered", "unordered"]
CONVENTIONS = ("ordered", "unordered")
N_MIN = 3
# counts stay below 2**17 and float64 transforms of length <= 2**25 keep the
# rounding error far below 0.5; past this the FFT backend refuses.
FFT_MAX_2N = 1 << 24
INTEGRALITY_TOL = 1e-3

if "NUMBA_THREADING_LAYER_PRIORITY" not in os.environ:
    # probing an outdated TBB first only produces warnings
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


@dataclass(frozen=True, eq=False)
class IndicatorBits:
    """Packed membership bits for positions 0..limit (little bit order)."""

    limit: int
    bits: np.ndarray = field(repr=False)
    source: str = "primes"

    @classmethod
    def from_values(cls, values, limit: int, source: str) -> "IndicatorBits":
        values = np.asarray(values, dtype=np.int64)
        values = values[values <= limit]
        if values.size and (values.min() < 0 or np.any(values % 2 == 0)):
            raise ValueError("indicator positions must be odd and nonnegative")
        flags = np.zeros(limit + 1, dtype=bool)
        flags[values] = True
        return cls(limit, np.packbits(flags, bitorder="little"), source)

    def flags(self) -> np.ndarray:
        return np.unpackbits(self.bits, count=self.limit + 1, bitorder="little").astype(bool)

    def positions(self) -> np.ndarray:
        return np.flatnonzero(self.flags()).astype(np.int64)


def prime_indicator(t: PrimeTable, N: int) -> IndicatorBits:
    """Odd primes (3 and up) not exceeding 2N."""
    limit = 2 * N + 1
    if t.limit < 2 * N:
        raise ValueError(f"prime table limit {t.limit} < 2N = {2 * N}")
    ps = t.primes[1:]
    return IndicatorBits.from_values(ps[ps <= 2 * N], limit, "primes")


def sequence_indicator(seq: "OddSequence", N: int) -> IndicatorBits:
    if seq.coverage_limit < 2 * N - 3:
        raise ValueError(
            f"sequence {seq.id} covers values up to {seq.coverage_limit}, need {2 * N - 3}"
        )
    return IndicatorBits.from_values(seq.elements, 2 * N + 1, seq.id)


@dataclass(frozen=True, eq=False)
class PairCountSeries:
    """Pair counts indexed directly by n; entries below ``n_min`` are zero padding."""

    n_max: int
    convention: str
    counts: np.ndarray = field(repr=False)
    source: str
    n_min: int = N_MIN

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {self.convention!r}")
        if self.counts.shape != (self.n_max + 1,):
            raise ValueError("counts must have length n_max + 1")

    @property
    def n(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_max + 1)

    @property
    def values(self) -> np.ndarray:
        return self.counts[self.n_min:]

    def __getitem__(self, n: int) -> int:
        if not self.n_min <= n <= self.n_max:
            raise IndexError(n)
        return int(self.counts[n])

    def __eq__(self, other):
        if not isinstance(other, PairCountSeries):
            return NotImplemented
        return (
            self.n_max == other.n_max
            and self.n_min == other.n_min
            and self.convention == other.convention
            and np.array_equal(self.counts, other.counts)
        )


def _check(ind: IndicatorBits, N: int, convention: str) -> None:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    if N < N_MIN:
        raise ValueError(f"N must be >= {N_MIN}, got {N}")
    if ind.limit < 2 * N:
        raise ValueError(f"indicator covers {ind.limit} < 2N = {2 * N}")


def _diagonal(ind: IndicatorBits, N: int) -> np.ndarray:
    flags = ind.flags()
    diag = np.zeros(N + 1, dtype=np.int64)
    diag[N_MIN:] = flags[N_MIN:N + 1]
    return diag


@numba.njit(parallel=True, cache=True)
def _unordered_counts(bits, elems, N):
    # elems ascending; count x <= y = 2n - x with both in the source
    out = np.zeros(N + 1, dtype=np.int64)
    for n in numba.prange(3, N + 1):
        two_n = 2 * n
        c = 0
        for k in range(elems.size):
            x = elems[k]
            if x > n:
                break
            y = two_n - x
            c += (bits[y >> 3] >> (y & 7)) & 1
        out[n] = c
    return out


def _set_threads(threads: int | None) -> None:
    ceiling = numba.config.NUMBA_NUM_THREADS
    numba.set_num_threads(ceiling if threads is None else max(1, min(threads, ceiling)))


def goldbach_series_bitset(
    ind: IndicatorBits, N: int, convention: Convention = "ordered", threads: int | None = None
) -> PairCountSeries:
    """Exact pair counts by direct partner lookup."""
    _check(ind, N, convention)
    _set_threads(threads)
    elems = ind.positions()
    elems = elems[elems <= N]
    unordered = _unordered_counts(ind.bits, elems, N)
    unordered[:N_MIN] = 0
    if convention == "unordered":
        counts = unordered
    else:
        counts = 2 * unordered - _diagonal(ind, N)
    return PairCountSeries(N, convention, counts, ind.source)


def goldbach_series_convolution(
    ind: IndicatorBits, N: int, convention: Convention = "ordered"
) -> PairCountSeries:
    """Pair counts from the FFT self-convolution of the indicator.

    Refuses ``2N > FFT_MAX_2N``, where double precision stops guaranteeing
    exact rounding.
    """
    _check(ind, N, convention)
    if 2 * N > FFT_MAX_2N:
        raise ValueError(f"2N = {2 * N} exceeds the exact-FFT ceiling {FFT_MAX_2N}")
    x = ind.flags()[: 2 * N + 1].astype(np.float64)
    size = 1 << int(2 * x.size - 1).bit_length()
    spectrum = np.fft.rfft(x, size)
    conv = np.fft.irfft(spectrum * spectrum, size)[: 2 * N + 1 : 2]
    rounded = np.rint(conv)
    err = float(np.max(np.abs(conv - rounded))) if conv.size else 0.0
    if err > INTEGRALITY_TOL:
        raise ArithmeticError(f"convolution drifted {err:.3g} from integers")
    ordered = rounded.astype(np.int64)
    ordered[:N_MIN] = 0
    if convention == "ordered":
        counts = ordered
    else:
        counts = (ordered + _diagonal(ind, N)) // 2
    return PairCountSeries(N, convention, counts, ind.source)


BACKENDS = {"bitset": goldbach_series_bitset, "fft": goldbach_series_convolution}


def goldbach_series(
    t: PrimeTable, N: int, convention: Convention = "ordered", backend: str = "fft", threads: int | None = None
) -> PairCountSeries:
    """g(n) for 3 <= n <= N over the odd primes."""
    return _run(prime_indicator(t, N), N, convention, backend, threads)


def correlated_series(
    seq: "OddSequence", N: int, convention: Convention = "ordered", backend: str = "fft", threads: int | None = None
) -> PairCountSeries:
    """g_X(n) for 3 <= n <= N, counting pairs drawn from ``seq``."""
    return _run(sequence_indicator(seq, N), N, convention, backend, threads)


def _run(ind, N, convention, backend, threads):
    if backend == "bitset":
        return goldbach_series_bitset(ind, N, convention, threads)
    if backend == "fft":
        return goldbach_series_convolution(ind, N, convention)
    raise ValueError(f"unknown backend {backend!r}; choose from {sorted(BACKENDS)}")


@dataclass(frozen=True)
class Threshold:
    """Smallest m with counts[n] > 0 for every m < n <= certified_up_to.

    ``value`` is None when counts[n_max] == 0, i.e. no threshold exists
    within the computed range.
    """

    value: int | None
    certified_up_to: int

    def __str__(self):
        if self.value is None:
            return f"no threshold within [3, {self.certified_up_to}]"
        return f"{self.value} (certified only up to n = {self.certified_up_to})"


def first_threshold(s: PairCountSeries) -> Threshold:
    vals = s.values
    if vals.size == 0:
        raise ValueError("empty series")
    zeros = np.flatnonzero(vals == 0)
    if zeros.size == 0:
        return Threshold(s.n_min - 1, s.n_max)
    last_zero = int(zeros[-1]) + s.n_min
    if last_zero == s.n_max:
        return Threshold(None, s.n_max)
    return Threshold(last_zero, s.n_max)
