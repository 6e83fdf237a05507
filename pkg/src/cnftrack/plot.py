"""Standalone SVG 1.1 figures of track families.

Polyline points are written in data coordinates (metres or dimensionless
units) inside a group whose transform flips the y axis and applies one
uniform scale, so the aspect ratio is exact and the geometry can be read back
from the file without knowing the pixel mapping.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

__all__ = ["Curve", "render_svg", "read_svg_curves", "PALETTE"]

# red, green, brown, blue, violet, then extras
PALETTE = ("#d62728", "#2ca02c", "#8c564b", "#1f77b4", "#9467bd", "#ff7f0e", "#17becf", "#7f7f7f")

CANVAS_WIDTH = 800
MARGIN = 56
LEGEND_WIDTH = 150
MAX_PLOT_HEIGHT = 560


@dataclass(frozen=True)
class Curve:
    label: str
    x: np.ndarray
    y: np.ndarray


def _num(v: float) -> str:
    s = f"{float(v):.9g}"
    return "0" if s == "-0" else s


def render_svg(curves: list[Curve], title: str = "", unit: str = "m") -> str:
    if not curves:
        raise ValueError("nothing to plot")
    xs = np.concatenate([c.x for c in curves])
    ys = np.concatenate([c.y for c in curves])
    xmin, xmax = float(xs.min()), float(xs.max())
    ymin, ymax = float(ys.min()), float(ys.max())
    span = max(xmax - xmin, ymax - ymin, 1e-12)
    pad = 0.03 * span
    xmin, xmax, ymin, ymax = xmin - pad, xmax + pad, ymin - pad, ymax + pad
    bw, bh = xmax - xmin, ymax - ymin

    plot_w = CANVAS_WIDTH - 2 * MARGIN - LEGEND_WIDTH
    k = min(plot_w / bw, MAX_PLOT_HEIGHT / bh)
    plot_h = bh * k
    plot_w_used = bw * k
    height = int(np.ceil(plot_h + 2 * MARGIN))
    x0, y0 = MARGIN, MARGIN
    tx = x0 - xmin * k
    ty = y0 + ymax * k
    stroke = 2.0 / k

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{CANVAS_WIDTH}" height="{height}" viewBox="0 0 {CANVAS_WIDTH} {height}">',
        f"<title>{escape(title)}</title>",
        f'<rect x="0" y="0" width="{CANVAS_WIDTH}" height="{height}" fill="#ffffff"/>',
        f'<rect x="{_num(x0)}" y="{_num(y0)}" width="{_num(plot_w_used)}" height="{_num(plot_h)}" '
        'fill="none" stroke="#444444" stroke-width="1"/>',
        f'<text x="{_num(x0 + plot_w_used / 2)}" y="{_num(y0 + plot_h + 36)}" '
        f'font-family="sans-serif" font-size="14" text-anchor="middle">x [{escape(unit)}]</text>',
        f'<text x="{_num(x0 - 36)}" y="{_num(y0 + plot_h / 2)}" font-family="sans-serif" '
        f'font-size="14" text-anchor="middle" transform="rotate(-90 {_num(x0 - 36)} '
        f'{_num(y0 + plot_h / 2)})">y [{escape(unit)}]</text>',
        f'<g id="tracks" transform="matrix({_num(k)} 0 0 {_num(-k)} {_num(tx)} {_num(ty)})">',
    ]
    for i, c in enumerate(curves):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{_num(a)},{_num(b)}" for a, b in zip(c.x, c.y))
        out.append(f'<g id="track-{i}">')
        out.append(f"<title>{escape(c.label)}</title>")
        out.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="{_num(stroke)}" '
            f'stroke-linejoin="round" points="{pts}"/>'
        )
        out.append("</g>")
    out.append("</g>")

    lx = x0 + plot_w_used + 20
    out.append('<g id="legend" font-family="sans-serif" font-size="14">')
    for i, c in enumerate(curves):
        color = PALETTE[i % len(PALETTE)]
        ly = y0 + 10 + 22 * i
        out.append(
            f'<line x1="{_num(lx)}" y1="{_num(ly)}" x2="{_num(lx + 28)}" y2="{_num(ly)}" '
            f'stroke="{color}" stroke-width="3"/>'
        )
        out.append(f'<text x="{_num(lx + 36)}" y="{_num(ly + 5)}">{escape(c.label)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def read_svg_curves(text: str) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """Parse a document written by :func:`render_svg` back into data coordinates."""
    import xml.etree.ElementTree as ET

    ns = {"svg": "http://www.w3.org/2000/svg"}
    root = ET.fromstring(text.encode("utf-8"))
    curves = {}
    for g in root.iterfind(".//svg:g[@id='tracks']/svg:g", ns):
        label = g.find("svg:title", ns).text
        pts = g.find("svg:polyline", ns).get("points").split()
        xy = np.array([[float(v) for v in p.split(",")] for p in pts])
        curves[label] = (xy[:, 0], xy[:, 1])
    return curves

