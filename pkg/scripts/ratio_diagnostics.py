"""How closely does g(n) track the Hardy-Littlewood estimate h(n)?

Prints the median and spread of g/h over dyadic windows, for the ordered
count against 4cn/(ln n)^2 * S(n).  The median stays a few percent above 1
at desk scale: the (ln n)^2 form undercounts compared with the integral
li2-type estimate.

    python3 scripts/ratio_diagnostics.py --n-max 500000
"""
import argparse

import numpy as np

from goldcomet import hl
from goldcomet.paircount import goldbach_series
from goldcomet.primes import build_sieve


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=500_000)
    args = ap.parse_args()
    N = args.n_max
    table = build_sieve(max(2 * N + 4096, 10**6))
    c = hl.hl_constant(table, 10**6)
    g = goldbach_series(table, N)
    h = hl.hl_series(table, N, c)
    print(f"c = {c.value:.9f}")
    print(f"{'window':>20} {'median':>8} {'p2.5':>8} {'p97.5':>8}")
    lo = 1000
    while lo < N:
        hi = min(2 * lo, N)
        n = np.arange(lo, hi + 1)
        r = g.counts[n] / h[n]
        q = np.percentile(r, [2.5, 50, 97.5])
        print(f"{f'[{lo}, {hi}]':>20} {q[1]:8.4f} {q[0]:8.4f} {q[2]:8.4f}")
        lo = hi


if __name__ == "__main__":
    main()
