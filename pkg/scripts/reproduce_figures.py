"""Regenerate every comet plot as a CSV + SVG pair.

    python3 scripts/reproduce_figures.py --n-max 500000 --out figures/

Every figure goes through the `goldcomet` CLI, so the files are exactly what
the command line produces.  Pseudorandom members use a fixed seed.
"""
import argparse
import time
from pathlib import Path

from goldcomet.cli import run

SEED = 1


def figure_steps(n: int, out: Path):
    f = lambda name: str(out / name)  # noqa: E731
    yield "goldbach", [["comet", "--n-max", n, "--out", f("goldbach.csv")],
                    ["render", "--in", f("goldbach.csv"), "--out", f("goldbach.svg"), "--title", "g(n)"]]
    yield "hl_estimate", [["estimate", "--n-max", n, "--out", f("estimate.csv")],
                    ["render", "--in", f("estimate.csv"), "--series", "h", "--out", f("hl_estimate.svg"), "--title", "h(n)"]]
    yield "normalized", [["render", "--in", f("estimate.csv"), "--series", "G", "--overlay", "baseline:red",
                     "--out", f("normalized.svg"), "--title", "G(n) and 4cn/(ln n)^2"]]
    for h, pal in ((2, "m6"), (3, "m30"), (4, "m210"), (5, "m2310")):
        fig = f"strata_{pal}"
        yield fig, [["classify", "--in", f("goldbach.csv"), "--primorial-index", h, "--out", f(f"{fig}.csv")],
                    ["render", "--in", f(f"{fig}.csv"), "--palette", pal, "--out", f(f"{fig}.svg"),
                     "--title", f"g(n) by gcd(2n, {pal[1:]})"]]
    members = {
        "seq_t": ["--family", "t"],
        "seq_u": ["--family", "u"],
        "seq_v": ["--family", "v", "--strategy", "pseudorandom", "--seed", SEED],
        "seq_w": ["--family", "w", "--strategy", "pseudorandom", "--seed", SEED],
        "seq_w_coprime": ["--family", "w", "--strategy", "pseudorandom", "--seed", SEED,
                  "--coprime-index", 8, "--composite-bias", "none"],
        "seq_w_coprime_composite": ["--family", "w", "--strategy", "pseudorandom", "--seed", SEED,
                  "--coprime-index", 8, "--composite-bias", "max"],
    }
    for fig, flags in members.items():
        lo = 6 if fig.startswith("seq_w_coprime") else 3
        yield fig, [["correlate", "--n-max", n, *flags, "--out", f(f"{fig}.csv")],
                    ["render", "--in", f(f"{fig}.csv"), "--n-range", lo, n, "--out", f(f"{fig}.svg"),
                     "--title", " ".join(str(x) for x in flags)]]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=500_000)
    ap.add_argument("--out", type=Path, default=Path("figures"))
    ap.add_argument("--only", nargs="*", help="subset, e.g. goldbach strata_m2310")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for fig, steps in figure_steps(args.n_max, args.out):
        if args.only and fig not in args.only and fig not in ("goldbach", "hl_estimate"):
            continue
        t0 = time.perf_counter()
        for step in steps:
            code = run([str(a) for a in step])
            if code:
                raise SystemExit(f"{fig}: {' '.join(map(str, step))} exited {code}")
        print(f"{fig}  {time.perf_counter() - t0:6.2f}s")


if __name__ == "__main__":
    main()
