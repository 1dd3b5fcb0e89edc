"""CSV emission/parsing and deterministic SVG scatter plots."""
from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .paircount import PairCountSeries
from .residue import COLOR_HEX, RANK_COLORS

CSV_HEADER = ("n", "count", "d", "sigma", "stratum")

PALETTES = {
    "m6": RANK_COLORS[:2],
    "m30": RANK_COLORS[:4],
    "m210": RANK_COLORS[:8],
    "m2310": RANK_COLORS[:14],
    "mono": None,
}


def emit_csv(series: PairCountSeries, classification=None) -> str:
    """``n,count,d,sigma,stratum`` rows; classification columns empty when absent.

    ``classification`` is a (d, sigma, rank) triple of arrays aligned with
    ``series.n``, as returned by ``residue.classify_range``.
    """
    buf = io.StringIO()
    buf.write(",".join(CSV_HEADER) + "\n")
    n = series.n
    counts = series.values
    if classification is None:
        for a, b in zip(n.tolist(), counts.tolist()):
            buf.write(f"{a},{b},,,\n")
    else:
        d, sig, rank = (np.asarray(c).tolist() for c in classification)
        for row in zip(n.tolist(), counts.tolist(), d, sig, rank):
            buf.write("%d,%d,%d,%d,%d\n" % row)
    return buf.getvalue()


def parse_csv(text: str) -> dict[str, np.ndarray]:
    """Column name -> array.  Integer columns stay int64; empty columns are dropped."""
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty CSV document")
    header = lines[0].split(",")
    cols: list[list[str]] = [[] for _ in header]
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != len(header):
            raise ValueError(f"line {lineno}: expected {len(header)} fields, got {len(parts)}")
        for c, v in zip(cols, parts):
            c.append(v)
    out = {}
    for name, vals in zip(header, cols):
        if vals and all(v == "" for v in vals):
            continue
        try:
            out[name] = np.array([int(v) for v in vals], dtype=np.int64)
        except ValueError:
            out[name] = np.array([float(v) for v in vals], dtype=np.float64)
    return out


def series_from_csv(text: str, convention: str = "ordered", source: str = "csv") -> PairCountSeries:
    cols = parse_csv(text)
    n, count = cols.get("n", np.zeros(0, np.int64)), cols.get("count", np.zeros(0, np.int64))
    if n.size == 0:
        raise ValueError("CSV has no rows")
    n_min, n_max = int(n[0]), int(n[-1])
    if not np.array_equal(n, np.arange(n_min, n_max + 1)):
        raise ValueError("n column must be a contiguous ascending range")
    counts = np.zeros(n_max + 1, dtype=np.int64)
    counts[n_min:] = count
    return PairCountSeries(n_max, convention, counts, source, n_min=n_min)


@dataclass(frozen=True)
class Layer:
    """A background series drawn beneath the main one."""

    n: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)
    color: str = "lightgrey"


@dataclass(frozen=True)
class PlotSpec:
    n_range: tuple[int, int] | None = None
    series: str = "count"
    palette: str = "mono"
    width: int = 800
    height: int = 500
    point_size: float = 1.0
    overlays: tuple[tuple[str, str], ...] = ()  # (column, color) drawn over the points
    title: str = ""

    def __post_init__(self):
        if self.palette not in PALETTES:
            raise ValueError(f"unknown palette {self.palette!r}; choose from {sorted(PALETTES)}")
        if self.width < 100 or self.height < 100:
            raise ValueError("canvas must be at least 100x100 pixels")


MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 30, 40


def _nice_step(span: float, target: int = 5) -> float:
    raw = span / target
    mag = 10 ** np.floor(np.log10(raw))
    for m in (1, 2, 5, 10):
        if raw <= m * mag:
            return float(m * mag)
    return float(10 * mag)


def _fmt(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else f"{v:g}"


def render_svg(csv_text: str, spec: PlotSpec, layers: tuple[Layer, ...] = ()) -> str:
    """Scatter plot of one CSV column against n, colored by stratum rank.

    Points are snapped to whole pixels and deduplicated per color, so the
    output size is bounded by the canvas, and the document is a pure
    function of its inputs.
    """
    cols = parse_csv(csv_text)
    if spec.series not in cols:
        raise ValueError(f"column {spec.series!r} not in CSV (have {sorted(cols)})")
    n = cols["n"]
    y = cols[spec.series].astype(np.float64)
    palette = PALETTES[spec.palette]
    if palette is None:
        colors = np.zeros(n.size, dtype=np.int64)
        names = ("black",)
    else:
        if "stratum" not in cols:
            raise ValueError(f"palette {spec.palette} needs a stratum column; run classify first")
        colors = cols["stratum"]
        missing = sorted(set(np.unique(colors).tolist()) - set(range(len(palette))))
        if missing:
            raise ValueError(f"strata without a color in palette {spec.palette}: {missing}")
        names = palette

    lo, hi = spec.n_range if spec.n_range else (int(n.min()), int(n.max()))
    if hi <= lo:
        raise ValueError(f"empty n range [{lo}, {hi}]")
    sel = (n >= lo) & (n <= hi) & np.isfinite(y)
    extra = [(c, cols[c].astype(np.float64)) for c, _ in spec.overlays if c in cols]
    missing_ov = [c for c, _ in spec.overlays if c not in cols]
    if missing_ov:
        raise ValueError(f"overlay columns not in CSV: {missing_ov}")

    ys = [y[sel]] + [v[sel & np.isfinite(v)] for _, v in extra]
    for layer in layers:
        lsel = (layer.n >= lo) & (layer.n <= hi) & np.isfinite(layer.y)
        ys.append(layer.y[lsel])
    y_top = max((float(v.max()) for v in ys if v.size), default=1.0)
    y_step = _nice_step(y_top if y_top > 0 else 1.0)
    y_max = y_step * np.ceil(y_top / y_step) if y_top > 0 else y_step

    pw = spec.width - MARGIN_L - MARGIN_R
    ph = spec.height - MARGIN_T - MARGIN_B

    def px(nv):
        return np.rint(MARGIN_L + (nv - lo) / (hi - lo) * pw).astype(np.int64)

    def py(yv):
        return np.rint(MARGIN_T + ph - yv / y_max * ph).astype(np.int64)

    s = spec.point_size
    half = s / 2.0
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>\n',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{spec.width}" '
        f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">\n',
        f'<rect x="0" y="0" width="{spec.width}" height="{spec.height}" fill="#ffffff"/>\n',
    ]
    if spec.title:
        out.append(f'<text x="{spec.width // 2}" y="18" font-family="sans-serif" font-size="13" '
                   f'text-anchor="middle">{_escape(spec.title)}</text>\n')

    def points(xs, yv, color):
        pts = np.unique(np.stack((px(xs), py(yv)), axis=1), axis=0)
        if pts.size == 0:
            return
        out.append(f'<g fill="{COLOR_HEX.get(color, color)}">\n')
        for a, b in pts.tolist():
            out.append(f'<rect x="{a - half:g}" y="{b - half:g}" width="{s:g}" height="{s:g}"/>\n')
        out.append("</g>\n")

    for layer in layers:
        lsel = (layer.n >= lo) & (layer.n <= hi) & np.isfinite(layer.y)
        points(layer.n[lsel], layer.y[lsel], layer.color)
    for rank, name in enumerate(names):
        m = sel & (colors == rank)
        points(n[m], y[m], name)
    for (col, color), (_, v) in zip(spec.overlays, extra):
        m = sel & np.isfinite(v)
        points(n[m], v[m], color)

    out.append(_axes(lo, hi, y_max, y_step, pw, ph))
    out.append("</svg>\n")
    return "".join(out)


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _axes(lo, hi, y_max, y_step, pw, ph) -> str:
    x0, y0 = MARGIN_L, MARGIN_T + ph
    parts = [
        f'<g stroke="#000000" stroke-width="1" fill="none">'
        f'<line x1="{x0}" y1="{y0}" x2="{x0 + pw}" y2="{y0}"/>'
        f'<line x1="{x0}" y1="{MARGIN_T}" x2="{x0}" y2="{y0}"/></g>\n',
        '<g font-family="sans-serif" font-size="11" fill="#000000">\n',
    ]
    x_step = _nice_step(hi - lo)
    t = np.ceil(lo / x_step) * x_step
    while t <= hi:
        xp = round(x0 + (t - lo) / (hi - lo) * pw)
        parts.append(f'<text x="{xp}" y="{y0 + 16}" text-anchor="middle">{_fmt(t)}</text>\n')
        t += x_step
    t = 0.0
    while t <= y_max:
        yp = round(y0 - t / y_max * ph)
        parts.append(f'<text x="{x0 - 6}" y="{yp + 4}" text-anchor="end">{_fmt(t)}</text>\n')
        t += y_step
    parts.append("</g>\n")
    return "".join(parts)
