"""Minimal SVG writer for forest plots and decision figures.

Hand-rolled rectangles, lines, and text; no plotting dependency. All
coordinates are formatted with fixed precision so output is byte-stable for
identical inputs.
"""

from .decision import Decision

_COLORS = {
    Decision.ACCEPT: "#2e7d32",
    Decision.REJECT: "#c62828",
    Decision.AGNOSTIC: "#f9a825",
}
_BAND_FILL = "#c5d9f1"

WIDTH = 720
ROW_H = 26
MARGIN_L = 170
MARGIN_R = 30
MARGIN_T = 46
MARGIN_B = 40


def _fmt(x: float) -> str:
    return f"{x:.2f}"


class _Canvas:
    def __init__(self, width, height):
        self.width = width
        self.height = height
        self.parts = []

    def rect(self, x, y, w, h, fill, opacity=1.0):
        self.parts.append(
            f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" height="{_fmt(h)}" '
            f'fill="{fill}" fill-opacity="{_fmt(opacity)}"/>'
        )

    def line(self, x1, y1, x2, y2, stroke="#333333", width=1.5, dash=None):
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{stroke}" stroke-width="{_fmt(width)}"{dash_attr}/>'
        )

    def text(self, x, y, s, size=12, anchor="start", fill="#111111"):
        self.parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{size}" '
            f'font-family="sans-serif" text-anchor="{anchor}" fill="{fill}">{s}</text>'
        )

    def render(self) -> str:
        body = "\n".join(self.parts)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" '
            f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">\n'
            f'<rect width="{self.width}" height="{self.height}" fill="white"/>\n'
            f"{body}\n</svg>\n"
        )


def _x_mapper(lo, hi, plot_w):
    span = hi - lo if hi > lo else 1.0

    def to_px(v):
        return MARGIN_L + (v - lo) * plot_w / span

    return to_px


def _axis(canvas, to_px, lo, hi, y):
    canvas.line(to_px(lo), y, to_px(hi), y, "#555555", 1.0)
    for frac in range(5):
        v = lo + frac * (hi - lo) / 4.0
        canvas.line(to_px(v), y, to_px(v), y + 4, "#555555", 1.0)
        canvas.text(to_px(v), y + 16, f"{v:.3g}", size=10, anchor="middle")


def forest_svg(data) -> str:
    """Forest plot: shaded equivalence band, one CI row per study, pooled last.

    Square markers scale with inverse variance; row color encodes the
    decision.
    """
    rows = data.rows
    height = MARGIN_T + ROW_H * len(rows) + MARGIN_B
    canvas = _Canvas(WIDTH, height)
    plot_w = WIDTH - MARGIN_L - MARGIN_R

    lows = [r.lower for r in rows] + [data.region_hi]
    highs = [r.upper for r in rows] + [data.region_hi]
    xmin = min(min(lows), 0.0)
    xmax = max(max(highs), 0.0)
    pad = 0.06 * (xmax - xmin if xmax > xmin else 1.0)
    xmin, xmax = xmin - pad, xmax + pad
    to_px = _x_mapper(xmin, xmax, plot_w)

    band_lo = max(data.region_lo, xmin)
    canvas.rect(to_px(band_lo), MARGIN_T - 8,
                to_px(min(data.region_hi, xmax)) - to_px(band_lo),
                ROW_H * len(rows) + 12, _BAND_FILL, 0.7)
    canvas.line(to_px(0.0), MARGIN_T - 8, to_px(0.0),
                MARGIN_T + ROW_H * len(rows) + 4, "#777777", 1.0, dash="4 3")
    canvas.line(to_px(data.region_hi), MARGIN_T - 8, to_px(data.region_hi),
                MARGIN_T + ROW_H * len(rows) + 4, "#3b6fb5", 1.2)
    canvas.text(to_px(data.region_hi), MARGIN_T - 12, f"{data.region_hi:.3f}",
                size=10, anchor="middle", fill="#3b6fb5")

    max_size = max(r.marker_size for r in rows)
    for i, row in enumerate(rows):
        y = MARGIN_T + ROW_H * i + ROW_H / 2.0
        color = _COLORS[row.decision]
        label = row.id if row.kind == "study" else row.id.upper()
        canvas.text(8, y + 4, label, size=11)
        canvas.line(to_px(row.lower), y, to_px(row.upper), y, color, 2.0)
        side = 4.0 + 8.0 * (row.marker_size / max_size)
        canvas.rect(to_px(row.effect) - side / 2.0, y - side / 2.0, side, side, color)
        canvas.text(WIDTH - MARGIN_R + 4, y + 4, row.decision.label, size=10, fill=color)

    _axis(canvas, to_px, xmin, xmax, MARGIN_T + ROW_H * len(rows) + 10)
    canvas.text(8, 20, "risk difference, equivalence region shaded", size=12)
    return canvas.render()


def decisions_svg(results, title="three-way decisions") -> str:
    """Decision figure: one row per hypothesis, extent bar against its null band.

    Only results carrying an interval extent are drawn (max-pairwise rows are
    summarized textually).
    """
    drawable = [r for r in results if r.extent_used is not None]
    height = MARGIN_T + ROW_H * max(len(results), 1) + MARGIN_B
    canvas = _Canvas(WIDTH, height)
    plot_w = WIDTH - MARGIN_L - MARGIN_R

    spans = []
    for r in drawable:
        spans.extend([r.extent_used.lower, r.extent_used.upper])
        nl, nh = _null_bounds(r.hypothesis)
        if nl is not None:
            spans.extend([v for v in (nl, nh) if abs(v) != float("inf")])
    if not spans:
        spans = [-1.0, 1.0]
    xmin, xmax = min(spans), max(spans)
    pad = 0.08 * (xmax - xmin if xmax > xmin else 1.0)
    xmin, xmax = xmin - pad, xmax + pad
    to_px = _x_mapper(xmin, xmax, plot_w)

    for i, r in enumerate(results):
        y = MARGIN_T + ROW_H * i + ROW_H / 2.0
        color = _COLORS[r.decision]
        canvas.text(8, y + 4, r.hypothesis_id, size=11)
        if r.extent_used is not None:
            nl, nh = _null_bounds(r.hypothesis)
            if nl is not None:
                blo = max(nl, xmin)
                bhi = min(nh, xmax)
                canvas.rect(to_px(blo), y - ROW_H / 2.0 + 3,
                            to_px(bhi) - to_px(blo), ROW_H - 6, _BAND_FILL, 0.7)
            canvas.line(to_px(r.extent_used.lower), y, to_px(r.extent_used.upper), y, color, 2.5)
            canvas.rect(to_px(r.extent_used.point_estimate) - 3, y - 3, 6, 6, color)
        canvas.text(WIDTH - MARGIN_R + 4, y + 4, r.decision.label, size=10, fill=color)

    _axis(canvas, to_px, xmin, xmax, MARGIN_T + ROW_H * len(results) + 10)
    canvas.text(8, 20, title, size=12)
    return canvas.render()


def _null_bounds(h):
    from .hypotheses import Band, HalfSpace, Interval

    if isinstance(h, Band):
        return h.offset - h.delta, h.offset + h.delta
    if isinstance(h, Interval):
        return h.lo, h.hi
    if isinstance(h, HalfSpace):
        return (float("-inf"), h.bound) if h.side == "below" else (h.bound, float("inf"))
    return None, None
