"""Standalone SVG 1.1 charts for report documents.

Three panels share one styling table and one color cycle, so a model's
net-benefit curve, PPV curve and calibration curves are color matched.
Reference curves: the treat-none diagonal on PPV/calibration panels, a
dotted per-model treat-all comparison curve on the PPV panel, and the
treat-all / treat-none net-benefit curves on the decision panel.
Undefined values (selection rate 0 or 1) break the affected polyline.
"""

from __future__ import annotations

from .errors import UsageError
from .report import ReportDocument

__all__ = ["render_svg", "STYLE", "PANELS"]

PANELS = ("decision", "ppv", "calibration")

STYLE = {
    "width": 800,
    "height": 600,
    "margin_left": 80,
    "margin_right": 180,
    "margin_top": 50,
    "margin_bottom": 60,
    "colors": ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"),
    "reference_color": "#666666",
    "axis_color": "#000000",
    "grid_color": "#dddddd",
    "font": "Helvetica, Arial, sans-serif",
    "stroke_width": 2.0,
    "reference_width": 1.5,
    "dotted": "2,4",
    "dashed": "8,4",
    "nb_floor": -0.05,
    "y_ticks": 5,
    "x_ticks": 5,
}

_TITLES = {
    "decision": "Decision curve (net benefit)",
    "ppv": "PPV curve",
    "calibration": "Threshold calibration",
}
_Y_LABELS = {
    "decision": "net benefit",
    "ppv": "positive predictive value",
    "calibration": "observed event rate",
}


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def _segments(xs, ys):
    """Split a series into contiguous runs, breaking where y is None."""
    runs, current = [], []
    for x, y in zip(xs, ys):
        if y is None:
            if current:
                runs.append(current)
            current = []
        else:
            current.append((x, y))
    if current:
        runs.append(current)
    return runs


class _Panel:
    def __init__(self, x_range, y_range):
        self.x_lo, self.x_hi = x_range
        self.y_lo, self.y_hi = y_range
        self.left = STYLE["margin_left"]
        self.right = STYLE["width"] - STYLE["margin_right"]
        self.top = STYLE["margin_top"]
        self.bottom = STYLE["height"] - STYLE["margin_bottom"]
        self.parts = []

    def x_px(self, x):
        span = self.x_hi - self.x_lo or 1.0
        return self.left + (x - self.x_lo) / span * (self.right - self.left)

    def y_px(self, y):
        span = self.y_hi - self.y_lo or 1.0
        y = min(max(y, self.y_lo), self.y_hi)  # render-time clip only
        return self.bottom - (y - self.y_lo) / span * (self.bottom - self.top)

    def add_axes(self, title, y_label):
        s = STYLE
        self.parts.append(
            f'<text x="{s["width"] / 2:.2f}" y="28" text-anchor="middle" '
            f'font-family="{s["font"]}" font-size="18">{_escape(title)}</text>'
        )
        for i in range(s["y_ticks"] + 1):
            value = self.y_lo + (self.y_hi - self.y_lo) * i / s["y_ticks"]
            y = self.y_px(value)
            self.parts.append(
                f'<line x1="{self.left}" y1="{y:.2f}" x2="{self.right}" y2="{y:.2f}" '
                f'stroke="{s["grid_color"]}" stroke-width="1"/>'
            )
            self.parts.append(
                f'<text x="{self.left - 8}" y="{y + 4:.2f}" text-anchor="end" '
                f'font-family="{s["font"]}" font-size="12">{value:.2f}</text>'
            )
        for i in range(s["x_ticks"] + 1):
            value = self.x_lo + (self.x_hi - self.x_lo) * i / s["x_ticks"]
            x = self.x_px(value)
            self.parts.append(
                f'<line x1="{x:.2f}" y1="{self.bottom}" x2="{x:.2f}" '
                f'y2="{self.bottom + 5}" stroke="{s["axis_color"]}" stroke-width="1"/>'
            )
            self.parts.append(
                f'<text x="{x:.2f}" y="{self.bottom + 20:.2f}" text-anchor="middle" '
                f'font-family="{s["font"]}" font-size="12">{value:.2f}</text>'
            )
        self.parts.append(
            f'<line x1="{self.left}" y1="{self.bottom}" x2="{self.right}" '
            f'y2="{self.bottom}" stroke="{s["axis_color"]}" stroke-width="1.5"/>'
        )
        self.parts.append(
            f'<line x1="{self.left}" y1="{self.top}" x2="{self.left}" '
            f'y2="{self.bottom}" stroke="{s["axis_color"]}" stroke-width="1.5"/>'
        )
        self.parts.append(
            f'<text x="{(self.left + self.right) / 2:.2f}" y="{STYLE["height"] - 18}" '
            f'text-anchor="middle" font-family="{s["font"]}" font-size="14">'
            f'decision threshold</text>'
        )
        self.parts.append(
            f'<text x="22" y="{(self.top + self.bottom) / 2:.2f}" text-anchor="middle" '
            f'font-family="{s["font"]}" font-size="14" '
            f'transform="rotate(-90 22 {(self.top + self.bottom) / 2:.2f})">'
            f'{_escape(y_label)}</text>'
        )

    def add_series(self, xs, ys, color, css_class, dasharray=None, width=None):
        width = width if width is not None else STYLE["stroke_width"]
        dash = f' stroke-dasharray="{dasharray}"' if dasharray else ""
        for run in _segments(xs, ys):
            coords = " ".join(f"{self.x_px(x):.2f},{self.y_px(y):.2f}" for x, y in run)
            self.parts.append(
                f'<polyline class="{css_class}" fill="none" stroke="{color}" '
                f'stroke-width="{width}" points="{coords}"{dash}/>'
            )

    def add_legend(self, entries):
        x = self.right + 16
        y = self.top + 10
        for label, color, dasharray in entries:
            dash = f' stroke-dasharray="{dasharray}"' if dasharray else ""
            self.parts.append(
                f'<line x1="{x}" y1="{y}" x2="{x + 28}" y2="{y}" stroke="{color}" '
                f'stroke-width="{STYLE["stroke_width"]}"{dash}/>'
            )
            self.parts.append(
                f'<text x="{x + 34}" y="{y + 4}" font-family="{STYLE["font"]}" '
                f'font-size="12">{_escape(label)}</text>'
            )
            y += 22

    def render(self) -> str:
        s = STYLE
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{s["width"]}" height="{s["height"]}" '
            f'viewBox="0 0 {s["width"]} {s["height"]}">'
        )
        background = '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>'
        return "\n".join([head, background, *self.parts, "</svg>"])


def _color(i: int) -> str:
    colors = STYLE["colors"]
    return colors[i % len(colors)]


def _x_range(doc: ReportDocument):
    ts = [p.t for model in doc.models for p in model.points]
    return (min(ts), max(ts)) if ts else (0.0, 1.0)


def _decision_panel(doc: ReportDocument) -> str:
    values = [0.0]
    for model in doc.models:
        values.extend(p.nb_model for p in model.points)
        values.extend(p.nb_all for p in model.points)
    y_lo = max(STYLE["nb_floor"], min(values))
    y_hi = max(values)
    pad = 0.05 * (y_hi - y_lo or 1.0)
    panel = _Panel(_x_range(doc), (y_lo, y_hi + pad))
    panel.add_axes(_TITLES["decision"], _Y_LABELS["decision"])
    legend = []
    first = doc.models[0]
    ts = [p.t for p in first.points]
    # Models share one cohort, so one treat-all / treat-none pair suffices.
    panel.add_series(ts, [p.nb_all for p in first.points], STYLE["reference_color"],
                     "nb-treat-all", dasharray=STYLE["dashed"],
                     width=STYLE["reference_width"])
    panel.add_series(ts, [p.nb_none for p in first.points], STYLE["axis_color"],
                     "nb-treat-none", width=STYLE["reference_width"])
    for i, model in enumerate(doc.models):
        panel.add_series([p.t for p in model.points], [p.nb_model for p in model.points],
                         _color(i), "nb-model")
        legend.append((model.name, _color(i), None))
    legend.append(("treat all", STYLE["reference_color"], STYLE["dashed"]))
    legend.append(("treat none", STYLE["axis_color"], None))
    panel.add_legend(legend)
    return panel.render()


def _ppv_panel(doc: ReportDocument) -> str:
    panel = _Panel(_x_range(doc), (0.0, 1.0))
    panel.add_axes(_TITLES["ppv"], _Y_LABELS["ppv"])
    legend = []
    first = doc.models[0]
    ts = [p.t for p in first.points]
    panel.add_series(ts, ts, STYLE["reference_color"], "ppv-treat-none",
                     width=STYLE["reference_width"])
    for i, model in enumerate(doc.models):
        mts = [p.t for p in model.points]
        panel.add_series(mts, [p.ppv_all_ref for p in model.points], _color(i),
                         "ppv-treat-all-ref", dasharray=STYLE["dotted"],
                         width=STYLE["reference_width"])
        panel.add_series(mts, [p.ppv for p in model.points], _color(i), "ppv-model")
        legend.append((model.name, _color(i), None))
        legend.append((f"{model.name} treat-all ref", _color(i), STYLE["dotted"]))
    legend.append(("treat none (diagonal)", STYLE["reference_color"], None))
    panel.add_legend(legend)
    return panel.render()


def _calibration_panel(doc: ReportDocument) -> str:
    panel = _Panel(_x_range(doc), (0.0, 1.0))
    panel.add_axes(_TITLES["calibration"], _Y_LABELS["calibration"])
    legend = []
    first = doc.models[0]
    ts = [p.t for p in first.points]
    panel.add_series(ts, ts, STYLE["reference_color"], "cal-diagonal",
                     width=STYLE["reference_width"])
    for i, model in enumerate(doc.models):
        mts = [p.t for p in model.points]
        panel.add_series(mts, [p.calibration.y_above for p in model.points], _color(i),
                         "cal-above")
        panel.add_series(mts, [p.calibration.y_below for p in model.points], _color(i),
                         "cal-below", dasharray=STYLE["dashed"])
        legend.append((f"{model.name} rate above t", _color(i), None))
        legend.append((f"{model.name} rate below t", _color(i), STYLE["dashed"]))
    legend.append(("diagonal", STYLE["reference_color"], None))
    panel.add_legend(legend)
    return panel.render()


def render_svg(doc: ReportDocument, which: str) -> str:
    """Render one panel ("decision", "ppv" or "calibration") as SVG text."""
    if which not in PANELS:
        raise UsageError(f"unknown panel {which!r}; expected one of {PANELS}")
    if not doc.models:
        raise UsageError("report has no model curves to draw")
    if which == "decision":
        return _decision_panel(doc)
    if which == "ppv":
        return _ppv_panel(doc)
    return _calibration_panel(doc)
