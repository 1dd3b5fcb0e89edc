"""Command-line front end.

Exit status: 0 on success, 1 on usage errors, 2 when a computation or I/O
step fails.
"""
from __future__ import annotations

import argparse
import io
import logging
import sys
from pathlib import Path

import numpy as np

from . import hl, paircount, residue, sequences
from .plot import PALETTES, Layer, PlotSpec, emit_csv, parse_csv, render_svg, series_from_csv
from .primes import build_sieve

log = logging.getLogger("goldcomet")

TABLE_SLACK = 4096  # sieve a little past 2N so sequence generators can look ahead


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="ascii", newline="\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="ascii")


def _compute_g(args):
    table = build_sieve(2 * args.n_max + TABLE_SLACK)
    return table, paircount.goldbach_series(table, args.n_max, args.convention, args.backend, args.threads)


def _classification(series, index):
    if index is None:
        return None
    table = residue.strata(index)
    return residue.classify_range(series.n_min, series.n_max, table)


def cmd_comet(args):
    _, g = _compute_g(args)
    log.info("g(n) over [3, %d]: first threshold %s", args.n_max, paircount.first_threshold(g))
    _write(args.out, emit_csv(g, _classification(g, args.primorial_index)))


def cmd_classify(args):
    if args.input:
        g = series_from_csv(_read(args.input), args.convention)
    else:
        _, g = _compute_g(args)
    cls = _classification(g, args.primorial_index)
    distinct = np.unique(cls[2]).size
    log.info("m = %d: %d distinct strata in [%d, %d]", residue.primorial(args.primorial_index),
             distinct, g.n_min, g.n_max)
    print(f"distinct strata: {distinct}", file=sys.stderr)
    _write(args.out, emit_csv(g, cls))


def cmd_estimate(args):
    table, g = _compute_g(args)
    c = hl.hl_constant(table, min(table.limit, args.prime_limit))
    h = hl.hl_series(table, args.n_max, c)
    G = hl.normalize(g, table)
    n = g.n
    base = hl.hl_baseline(n, c)
    syl = hl.SYLVESTER_1871_FACTOR * h[n]
    buf = io.StringIO()
    buf.write("n,count,h,G,baseline,sylvester1871\n")
    for row in zip(n.tolist(), g.values.tolist(), h[n].tolist(), G[n].tolist(), base.tolist(), syl.tolist()):
        buf.write("%d,%d,%.6f,%.6f,%.6f,%.6f\n" % row)
    log.info("c = %.9f (primes <= %d)", c.value, c.prime_limit)
    _write(args.out, buf.getvalue())


def cmd_sigma(args):
    table = residue.strata(args.primorial_index)
    lines = [f"# m = {table.m}, {len(table.rows)} even divisors, {table.distinct} distinct sigma values",
             "d,sigma,stratum,color"]
    lines += [f"{r.d},{r.sigma},{r.stratum_rank},{r.color}" for r in table.rows]
    _write(args.out, "\n".join(lines) + "\n")


def _coprime(args):
    if args.coprime_index is None:
        return None
    return (args.coprime_index, args.composite_bias)


def _make_sequence(args):
    upto = 2 * args.n_max
    table = build_sieve(upto + TABLE_SLACK)
    return sequences.generate(args.family, upto, table, args.strategy, args.seed, _coprime(args))


def _sequence_text(seq) -> str:
    head = [f"# recipe: {seq.id}", f"# coverage: {seq.coverage_limit}"]
    if seq.deviations:
        head.append("# deviations: " + " ".join(map(str, seq.deviations)))
    return "\n".join(head + [str(v) for v in seq.elements.tolist()]) + "\n"


def read_sequence(text: str) -> sequences.OddSequence:
    tag, coverage, values = "file", None, []
    for line in text.splitlines():
        if line.startswith("# recipe:"):
            tag = line.split(":", 1)[1].strip()
        elif line.startswith("# coverage:"):
            coverage = int(line.split(":", 1)[1])
        elif line and not line.startswith("#"):
            values.append(int(line))
    elems = np.array(values, dtype=np.int64)
    cov = coverage if coverage is not None else (int(elems[-1]) if elems.size else 0)
    return sequences.OddSequence(sequences.Recipe(tag), elems, cov)


def cmd_sequence(args):
    seq = _make_sequence(args)
    log.info("%s: %d elements up to %d", seq.id, len(seq), seq.coverage_limit)
    _write(args.out, _sequence_text(seq))


def cmd_correlate(args):
    if args.input:
        seq = read_sequence(_read(args.input))
    elif args.family:
        seq = _make_sequence(args)
    else:
        raise UsageError("correlate: one of --family or --in is required")
    g = paircount.correlated_series(seq, args.n_max, args.convention, args.backend, args.threads)
    log.info("g_%s: first threshold %s", seq.id, paircount.first_threshold(g))
    _write(args.out, emit_csv(g, _classification(g, args.primorial_index)))


def _layer(arg: str) -> Layer:
    # FILE[:COLUMN[:COLOR]]
    parts = arg.split(":")
    path, column, color = parts[0], "count", "lightgrey"
    if len(parts) > 1 and parts[1]:
        column = parts[1]
    if len(parts) > 2 and parts[2]:
        color = parts[2]
    cols = parse_csv(_read(path))
    if column not in cols:
        raise ValueError(f"layer {path}: no column {column!r}")
    return Layer(cols["n"], cols[column].astype(np.float64), color)


def cmd_render(args):
    overlays = tuple(tuple(o.split(":", 1)) if ":" in o else (o, "blue") for o in args.overlay)
    spec = PlotSpec(
        n_range=tuple(args.n_range) if args.n_range else None,
        series=args.series,
        palette=args.palette,
        width=args.width,
        height=args.height,
        point_size=args.point_size,
        overlays=overlays,
        title=args.title,
    )
    layers = tuple(_layer(x) for x in args.layer)
    _write(args.out, render_svg(_read(args.input), spec, layers))


def _common(p, compute=True):
    p.add_argument("--n-max", type=int, default=500_000, help="upper end N of [3, N]")
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    if compute:
        p.add_argument("--convention", choices=paircount.CONVENTIONS, default="ordered")
        p.add_argument("--backend", choices=sorted(paircount.BACKENDS), default="fft")
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads for the bitset backend (default: all)")


def _sequence_flags(p, required):
    p.add_argument("--family", choices=sequences.FAMILIES, required=required)
    p.add_argument("--strategy", choices=sequences.STRATEGIES, default="max-odd")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--coprime-index", type=int, default=None,
                   help="prefer elements coprime to 3*5*...*p_h (v and w only)")
    p.add_argument("--composite-bias", choices=sequences.COMPOSITE_BIASES, default="none")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="goldcomet", description="Goldbach comet and its relatives.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("comet", help="g(n) over [3, N] as CSV")
    _common(p)
    p.add_argument("--primorial-index", type=int, default=None)
    p.set_defaults(func=cmd_comet)

    p = sub.add_parser("estimate", help="h(n), G(n) and Sylvester's variant as CSV")
    _common(p)
    p.add_argument("--prime-limit", type=int, default=hl.DEFAULT_PRIME_LIMIT)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("classify", help="add d, sigma, stratum columns for m = primorial(h)")
    _common(p)
    p.add_argument("--primorial-index", type=int, required=True)
    p.add_argument("--in", dest="input", default=None, help="existing comet CSV (else computed)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sigma", help="print the sigma table of primorial(h)")
    p.add_argument("--primorial-index", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("sequence", help="generate an odd sequence covering [3, 2N]")
    _common(p, compute=False)
    _sequence_flags(p, required=True)
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("correlate", help="g_X(n) over [3, N] as CSV")
    _common(p)
    _sequence_flags(p, required=False)
    p.add_argument("--in", dest="input", default=None, help="sequence file from `sequence`")
    p.add_argument("--primorial-index", type=int, default=None)
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("render", help="CSV -> SVG scatter plot")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--palette", choices=sorted(PALETTES), default="mono")
    p.add_argument("--series", default="count", help="CSV column for the y axis")
    p.add_argument("--overlay", action="append", default=[], metavar="COLUMN[:COLOR]")
    p.add_argument("--layer", action="append", default=[], metavar="FILE[:COLUMN[:COLOR]]",
                   help="background series from another CSV")
    p.add_argument("--n-range", type=int, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--height", type=int, default=500)
    p.add_argument("--point-size", type=float, default=1.0)
    p.add_argument("--title", default="")
    p.set_defaults(func=cmd_render)
    return ap


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        sys.stderr.write(str(e))
        return 1
    except SystemExit as e:  # --help
        return 0 if e.code in (0, None) else 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if getattr(args, "n_max", 3) < 3:
        sys.stderr.write("goldcomet: --n-max must be >= 3\n")
        return 1
    try:
        args.func(args)
    except UsageError as e:
        sys.stderr.write(f"{e}\n")
        return 1
    except (ValueError, ArithmeticError, OverflowError, KeyError, OSError) as e:
        sys.stderr.write(f"goldcomet: {e}\n")
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
