"""Deterministic SVG figures: layer scatter plots and separability curves.

Emission is a pure function of the data and the plot spec: identical
inputs give byte-identical documents, so figures are diffable in tests
and comparable across runs and models. Only SVG 1.1 primitives are
used; there are no external rendering dependencies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import numpy as np

from .analysis import GdvCurve
from .corpus import construction_names

# Fixed palette, assigned to the eleven constructions sorted by
# canonical name so colors are stable across runs and models.
_PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
    "#aec7e8",
)

CONSTRUCTION_COLORS: dict[str, str] = dict(zip(sorted(construction_names()), _PALETTE))

_CURVE_COLORS = ("#333333", "#1f77b4", "#2ca02c", "#d62728", "#9467bd", "#ff7f0e")
_FALLBACK_COLOR = "#555555"

_MARGIN_LEFT = 60.0
_MARGIN_RIGHT = 150.0
_MARGIN_TOP = 45.0
_MARGIN_BOTTOM = 50.0


@dataclass(frozen=True)
class PlotSpec:
    """Appearance of one figure."""

    kind: str = "scatter"
    title: str = ""
    colors: dict[str, str] = field(default_factory=lambda: dict(CONSTRUCTION_COLORS))
    x_label: str = ""
    y_label: str = ""
    width: int = 720
    height: int = 480


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _span(values, pad: float = 0.06) -> tuple[float, float]:
    """Padded data range; degenerate ranges widen to a unit span."""
    if len(values) == 0:
        return 0.0, 1.0
    lo, hi = float(min(values)), float(max(values))
    if hi == lo:
        return lo - 0.5, hi + 0.5
    margin = (hi - lo) * pad
    return lo - margin, hi + margin


def _header(spec: PlotSpec) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">',
        f'<rect x="0" y="0" width="{spec.width}" height="{spec.height}" fill="#ffffff"/>',
        f'<text x="{_fmt(spec.width / 2)}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{escape(spec.title)}</text>',
    ]


def _frame_and_axes(spec: PlotSpec, x_lo, x_hi, y_lo, y_hi) -> tuple[list[str], callable, callable]:
    """Plot frame, tick marks, and the data-to-pixel mapping functions."""
    px0, px1 = _MARGIN_LEFT, spec.width - _MARGIN_RIGHT
    py0, py1 = _MARGIN_TOP, spec.height - _MARGIN_BOTTOM

    def to_x(v: float) -> float:
        return px0 + (v - x_lo) / (x_hi - x_lo) * (px1 - px0)

    def to_y(v: float) -> float:
        # Larger values up; more-negative values sit visually lower.
        return py1 - (v - y_lo) / (y_hi - y_lo) * (py1 - py0)

    parts = [
        f'<rect x="{_fmt(px0)}" y="{_fmt(py0)}" width="{_fmt(px1 - px0)}" '
        f'height="{_fmt(py1 - py0)}" fill="none" stroke="#333333" stroke-width="1"/>'
    ]
    for value in (x_lo, (x_lo + x_hi) / 2, x_hi):
        x = to_x(value)
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(py1)}" x2="{_fmt(x)}" y2="{_fmt(py1 + 5)}" '
            f'stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(py1 + 18)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{value:.3g}</text>'
        )
    for value in (y_lo, (y_lo + y_hi) / 2, y_hi):
        y = to_y(value)
        parts.append(
            f'<line x1="{_fmt(px0 - 5)}" y1="{_fmt(y)}" x2="{_fmt(px0)}" y2="{_fmt(y)}" '
            f'stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(px0 - 8)}" y="{_fmt(y + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{value:.3g}</text>'
        )
    parts.append(
        f'<text x="{_fmt((px0 + px1) / 2)}" y="{_fmt(spec.height - 12)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{escape(spec.x_label)}</text>'
    )
    parts.append(
        f'<text x="16" y="{_fmt((py0 + py1) / 2)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {_fmt((py0 + py1) / 2)})">{escape(spec.y_label)}</text>'
    )
    return parts, to_x, to_y


def _legend(spec: PlotSpec, entries: list[tuple[str, str]]) -> list[str]:
    """One swatch + label per entry at the right edge."""
    x = spec.width - _MARGIN_RIGHT + 14
    parts = []
    for i, (name, color) in enumerate(entries):
        y = _MARGIN_TOP + 8 + i * 18
        parts.append(
            f'<g class="legend-entry">'
            f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="11" height="11" fill="{color}"/>'
            f'<text x="{_fmt(x + 16)}" y="{_fmt(y + 10)}" font-family="sans-serif" '
            f'font-size="11">{escape(name)}</text></g>'
        )
    return parts


def emit_scatter_svg(
    coords: np.ndarray,
    labels: list[str],
    spec: PlotSpec | None = None,
    flagged: list[bool] | None = None,
) -> str:
    """Scatter plot: one circle per point, colored by construction.

    Flagged outliers get a black stroke. The legend lists every
    construction present in the data, in canonical order.
    """
    spec = spec or PlotSpec(kind="scatter")
    pts = np.asarray(coords, dtype=np.float64)
    if pts.size == 0:
        pts = pts.reshape(0, 2)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("scatter input must be N x 2 coordinates")
    if len(labels) != pts.shape[0]:
        raise ValueError("one label per point required")
    if flagged is not None and len(flagged) != pts.shape[0]:
        raise ValueError("one flag per point required")

    x_lo, x_hi = _span(pts[:, 0])
    y_lo, y_hi = _span(pts[:, 1])
    parts = _header(spec)
    axes, to_x, to_y = _frame_and_axes(spec, x_lo, x_hi, y_lo, y_hi)
    parts += axes

    colors = spec.colors
    for i in range(pts.shape[0]):
        color = colors.get(labels[i], _FALLBACK_COLOR)
        stroke = (
            ' stroke="#000000" stroke-width="1.5"'
            if flagged is not None and flagged[i]
            else ' stroke="none"'
        )
        parts.append(
            f'<circle cx="{_fmt(to_x(pts[i, 0]))}" cy="{_fmt(to_y(pts[i, 1]))}" '
            f'r="3.5" fill="{color}"{stroke}/>'
        )

    present = sorted(set(labels))
    parts += _legend(spec, [(name, colors.get(name, _FALLBACK_COLOR)) for name in present])
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_curve_svg(curves: list[GdvCurve], spec: PlotSpec | None = None) -> str:
    """Layer-separability curves: one polyline per curve.

    All curves must share the same layer domain. Layer indices are
    ticked along the x-axis; the y-axis runs upward, so stronger
    clustering (more negative values) sits lower.
    """
    spec = spec or PlotSpec(kind="curve", x_label="layer", y_label="separability")
    if not curves:
        raise ValueError("need at least one curve")
    domain = sorted(curves[0].values)
    for curve in curves[1:]:
        if sorted(curve.values) != domain:
            raise ValueError("curves have mismatched layer domains")

    all_values = [v for curve in curves for v in curve.values.values()]
    y_lo, y_hi = _span(all_values)
    x_lo, x_hi = (domain[0], domain[-1]) if len(domain) > 1 else (domain[0] - 0.5, domain[0] + 0.5)

    parts = _header(spec)
    px0, px1 = _MARGIN_LEFT, spec.width - _MARGIN_RIGHT
    py0, py1 = _MARGIN_TOP, spec.height - _MARGIN_BOTTOM

    def to_x(v: float) -> float:
        return px0 + (v - x_lo) / (x_hi - x_lo) * (px1 - px0)

    def to_y(v: float) -> float:
        return py1 - (v - y_lo) / (y_hi - y_lo) * (py1 - py0)

    parts.append(
        f'<rect x="{_fmt(px0)}" y="{_fmt(py0)}" width="{_fmt(px1 - px0)}" '
        f'height="{_fmt(py1 - py0)}" fill="none" stroke="#333333" stroke-width="1"/>'
    )
    for layer in domain:
        x = to_x(layer)
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(py1)}" x2="{_fmt(x)}" y2="{_fmt(py1 + 5)}" '
            f'stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(py1 + 18)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{layer}</text>'
        )
    for value in (y_lo, (y_lo + y_hi) / 2, y_hi):
        y = to_y(value)
        parts.append(
            f'<line x1="{_fmt(px0 - 5)}" y1="{_fmt(y)}" x2="{_fmt(px0)}" y2="{_fmt(y)}" '
            f'stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(px0 - 8)}" y="{_fmt(y + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{value:.3g}</text>'
        )
    parts.append(
        f'<text x="{_fmt((px0 + px1) / 2)}" y="{_fmt(spec.height - 12)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{escape(spec.x_label)}</text>'
    )
    parts.append(
        f'<text x="16" y="{_fmt((py0 + py1) / 2)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {_fmt((py0 + py1) / 2)})">{escape(spec.y_label)}</text>'
    )

    legend_entries = []
    for i, curve in enumerate(curves):
        color = _CURVE_COLORS[i % len(_CURVE_COLORS)]
        points = " ".join(
            f"{_fmt(to_x(layer))},{_fmt(to_y(curve.values[layer]))}" for layer in domain
        )
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="2"/>'
        )
        legend_entries.append((curve.grouping.name, color))
    parts += _legend(spec, legend_entries)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
