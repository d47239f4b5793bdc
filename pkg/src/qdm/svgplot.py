"""Hand-rolled SVG renderings of profile, curve and threshold tables.

Deterministic output (no timestamps, fixed coordinate formatting). The
colour convention follows study-team practice: GO green, CONSIDER amber,
STOP red; INTERMEDIATE is drawn blue when present.
"""

from __future__ import annotations

from .tables import ResultTable

WIDTH, HEIGHT = 720, 420
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 30, 40, 55

COLORS = {
    "GO": "#2e7d32",
    "CONSIDER": "#ff8f00",
    "STOP": "#c62828",
    "INTERMEDIATE": "#1565c0",
}

_SERIES = (("p_go", "GO"), ("p_consider", "CONSIDER"), ("p_stop", "STOP"),
           ("p_intermediate", "INTERMEDIATE"))


def _f(x: float) -> str:
    return format(x, ".2f")


class _Scale:
    def __init__(self, lo: float, hi: float, out0: float, out1: float):
        if hi == lo:
            hi = lo + 1.0
        self.lo, self.hi, self.out0, self.out1 = lo, hi, out0, out1

    def __call__(self, v: float) -> float:
        t = (v - self.lo) / (self.hi - self.lo)
        return self.out0 + t * (self.out1 - self.out0)


def _ticks(lo: float, hi: float, n: int = 6) -> list[float]:
    if hi == lo:
        return [lo]
    span = hi - lo
    raw = span / max(n - 1, 1)
    mag = 10.0 ** int(f"{raw:e}".split("e")[1])
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    else:
        step = 10.0 * mag
    first = step * round(lo / step)
    if first < lo - 1e-12:
        first += step
    ticks = []
    v = first
    while v <= hi + 1e-12:
        ticks.append(round(v, 10))
        v += step
    return ticks


def _header(title: str, provenance: dict) -> list[str]:
    desc = "; ".join(f"{k}={provenance[k]}" for k in sorted(provenance))
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f"<title>{title}</title>",
        f"<desc>{desc}</desc>",
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]


def _axes(xs: _Scale, ys: _Scale, x_label: str, y_label: str,
          x_ticks: list[float], y_ticks: list[float]) -> list[str]:
    x0, x1 = MARGIN_L, WIDTH - MARGIN_R
    y0, y1 = HEIGHT - MARGIN_B, MARGIN_T
    parts = [f'<g stroke="#444" stroke-width="1">',
             f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/>',
             f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/>', "</g>"]
    for t in x_ticks:
        px = _f(xs(t))
        parts.append(f'<line x1="{px}" y1="{y0}" x2="{px}" y2="{y0 + 5}" stroke="#444"/>')
        parts.append(f'<text x="{px}" y="{y0 + 20}" text-anchor="middle">{t:g}</text>')
    for t in y_ticks:
        py = _f(ys(t))
        parts.append(f'<line x1="{x0 - 5}" y1="{py}" x2="{x0}" y2="{py}" stroke="#444"/>')
        parts.append(f'<text x="{x0 - 9}" y="{py}" text-anchor="end" dominant-baseline="middle">{t:g}</text>')
    parts.append(f'<text x="{(x0 + x1) // 2}" y="{HEIGHT - 12}" text-anchor="middle">{x_label}</text>')
    parts.append(f'<text x="18" y="{(y0 + y1) // 2}" text-anchor="middle" '
                 f'transform="rotate(-90 18 {(y0 + y1) // 2})">{y_label}</text>')
    return parts


def _legend(labels: list[str]) -> list[str]:
    parts = []
    x = MARGIN_L + 10
    for label in labels:
        color = COLORS[label]
        parts.append(f'<rect x="{x}" y="{MARGIN_T - 26}" width="12" height="12" fill="{color}"/>')
        parts.append(f'<text x="{x + 16}" y="{MARGIN_T - 16}">{label}</text>')
        x += 16 + 9 * len(label) + 24
    return parts


def _polyline(points: list[tuple[float, float]], color: str, label: str) -> str:
    coords = " ".join(f"{_f(px)},{_f(py)}" for px, py in points)
    return (f'<polyline fill="none" stroke="{color}" stroke-width="2" '
            f'points="{coords}"><title>{label}</title></polyline>')


def _profile_svg(table: ResultTable) -> str:
    axis = [float(v) for v in table.column("axis_value")]
    xs = _Scale(min(axis), max(axis), MARGIN_L, WIDTH - MARGIN_R)
    ys = _Scale(0.0, 1.0, HEIGHT - MARGIN_B, MARGIN_T)
    parts = _header("Decision probabilities", table.provenance)
    parts += _axes(xs, ys, "scenario axis", "probability",
                   _ticks(min(axis), max(axis)), [0.0, 0.25, 0.5, 0.75, 1.0])
    drawn = []
    for col, label in _SERIES:
        values = [float(v) for v in table.column(col)]
        if label == "INTERMEDIATE" and all(v == 0.0 for v in values):
            continue
        drawn.append(label)
        parts.append(_polyline(list(zip(map(xs, axis), map(ys, values))), COLORS[label], label))
    parts += _legend(drawn)
    parts.append("</svg>")
    return "\n".join(parts)


def _ppos_svg(table: ResultTable) -> str:
    ns = sorted(set(table.column("ph3_n_per_arm")))
    observed = [float(v) for v in table.column("observed_effect")]
    xs = _Scale(min(observed), max(observed), MARGIN_L, WIDTH - MARGIN_R)
    ys = _Scale(0.0, 1.0, HEIGHT - MARGIN_B, MARGIN_T)
    parts = _header("Predictive probability of Phase III success", table.provenance)
    parts += _axes(xs, ys, "observed Phase II difference", "predictive probability",
                   _ticks(min(observed), max(observed)), [0.0, 0.25, 0.5, 0.75, 1.0])
    for cut, label in ((0.70, "GO above"), (0.30, "STOP below")):
        py = _f(ys(cut))
        parts.append(f'<line x1="{MARGIN_L}" y1="{py}" x2="{WIDTH - MARGIN_R}" y2="{py}" '
                     f'stroke="#888" stroke-dasharray="6,4"/>')
        parts.append(f'<text x="{WIDTH - MARGIN_R - 4}" y="{float(py) - 4:.2f}" '
                     f'text-anchor="end" fill="#666">{label} {cut:g}</text>')
    shades = ["#1565c0", "#6a1b9a", "#00695c", "#bf360c", "#37474f"]
    n_col = table.column("ph3_n_per_arm")
    x_col = [float(v) for v in table.column("observed_effect")]
    y_col = [float(v) for v in table.column("ppos")]
    for i, n in enumerate(ns):
        pts = [(xs(x), ys(y)) for m, x, y in zip(n_col, x_col, y_col) if m == n]
        color = shades[i % len(shades)]
        parts.append(_polyline(pts, color, f"n3={n}"))
        if pts:
            parts.append(f'<text x="{_f(pts[-1][0] - 4)}" y="{_f(pts[-1][1] - 6)}" '
                         f'text-anchor="end" fill="{color}">{n}/arm</text>')
    parts.append("</svg>")
    return "\n".join(parts)


def _threshold_svg(table: ResultTable) -> str:
    row = dict(zip(table.columns, table.rows[0]))
    c_go, c_stop = float(row["c_go"]), float(row["c_stop"])
    overlap = bool(row["overlap"])
    lo_bp, hi_bp = min(c_go, c_stop), max(c_go, c_stop)
    span = max(hi_bp - lo_bp, 1e-9)
    x_min, x_max = lo_bp - 0.9 * span - 0.5, hi_bp + 0.9 * span + 0.5
    xs = _Scale(x_min, x_max, MARGIN_L, WIDTH - MARGIN_R)
    bar_y, bar_h = HEIGHT // 2 - 30, 60
    if overlap:
        middle = str(row.get("both_met_policy") or "CONSIDER")
    else:
        middle = "CONSIDER"
    segments = [(x_min, lo_bp, "STOP"), (lo_bp, hi_bp, middle), (hi_bp, x_max, "GO")]
    parts = _header("Observed treatment differences and decisions", table.provenance)
    for seg_lo, seg_hi, label in segments:
        px0, px1 = xs(seg_lo), xs(seg_hi)
        if px1 - px0 <= 0.0:
            continue
        parts.append(f'<rect x="{_f(px0)}" y="{bar_y}" width="{_f(px1 - px0)}" '
                     f'height="{bar_h}" fill="{COLORS[label]}" fill-opacity="0.85">'
                     f'<title>{label}</title></rect>')
        parts.append(f'<text x="{_f((px0 + px1) / 2)}" y="{bar_y + bar_h + 20}" '
                     f'text-anchor="middle" fill="{COLORS[label]}">{label}</text>')
    for bp in sorted({lo_bp, hi_bp}):
        px = _f(xs(bp))
        parts.append(f'<line x1="{px}" y1="{bar_y - 14}" x2="{px}" y2="{bar_y + bar_h + 6}" '
                     f'stroke="#111" stroke-width="2"/>')
        parts.append(f'<text x="{px}" y="{bar_y - 20}" text-anchor="middle" '
                     f'font-weight="bold">{bp:.2f}</text>')
    parts.append(f'<text x="{WIDTH // 2}" y="{HEIGHT - 16}" text-anchor="middle">'
                 f'observed treatment difference</text>')
    parts.append("</svg>")
    return "\n".join(parts)


def render_svg(table: ResultTable) -> str:
    if table.kind == "oc_profile":
        return _profile_svg(table)
    if table.kind == "ppos_curve":
        return _ppos_svg(table)
    if table.kind == "thresholds":
        return _threshold_svg(table)
    raise ValueError(f"no svg rendering for table kind {table.kind!r}")
