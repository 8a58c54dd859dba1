"""Static SVG rendering of trajectories, single panel or camera series.

Output is plain text built from the vertex data alone (17-significant-
digit coordinates, no timestamps, no generated ids), so identical inputs
produce byte-identical documents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .geometry import Polyline
from .serialize import fnum

_PANEL_GAP = 10.0


@dataclass(frozen=True)
class RenderOptions:
    """Pixel geometry and optional resolution-grid overlay."""

    width: int = 640
    height: int = 480
    stroke_width: float = 1.0
    margin: float = 0.05
    grid_step: float | None = None  # world units; lines at integer multiples

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("width and height must be positive")
        if not self.stroke_width > 0.0:
            raise ValueError("stroke width must be positive")
        if not 0.0 <= self.margin < 0.4:
            raise ValueError("margin fraction must lie in [0, 0.4)")
        if self.grid_step is not None and not self.grid_step > 0.0:
            raise ValueError("grid_step must be positive")


class _Viewport:
    """World-to-pixel mapping with aspect preserved and y flipped."""

    def __init__(self, poly: Polyline, opts: RenderOptions):
        x0, y0, x1, y1 = poly.bounds()
        extent = max(x1 - x0, y1 - y0)
        if extent == 0.0:
            raise ValueError("degenerate polyline: zero extent in both axes")
        pad = opts.margin * extent
        # a straight-line bbox has zero height; pad flat axes so the
        # viewport keeps a finite span
        flat = 0.5 * extent
        if x1 - x0 == 0.0:
            x0, x1 = x0 - flat, x1 + flat
        if y1 - y0 == 0.0:
            y0, y1 = y0 - flat, y1 + flat
        self.wx0, self.wy0 = x0 - pad, y0 - pad
        self.wx1, self.wy1 = x1 + pad, y1 + pad
        self.scale = min(
            opts.width / (self.wx1 - self.wx0), opts.height / (self.wy1 - self.wy0)
        )
        self.ox = 0.5 * (opts.width - self.scale * (self.wx1 - self.wx0))
        self.oy = 0.5 * (opts.height - self.scale * (self.wy1 - self.wy0))
        self.height = opts.height

    def to_px(self, x: float, y: float) -> tuple[float, float]:
        px = self.ox + (x - self.wx0) * self.scale
        py = self.height - self.oy - (y - self.wy0) * self.scale
        return px, py


def _path_d(poly: Polyline, view: _Viewport) -> str:
    parts = []
    for i, (x, y) in enumerate(poly.vertices):
        px, py = view.to_px(float(x), float(y))
        parts.append(f"{'M' if i == 0 else 'L'}{fnum(px)} {fnum(py)}")
    return "".join(parts)


def _grid_lines(view: _Viewport, step: float, stroke_width: float) -> list[str]:
    lines = []
    width = stroke_width * 0.5
    for i in range(math.ceil(view.wx0 / step), math.floor(view.wx1 / step) + 1):
        x0, y0 = view.to_px(i * step, view.wy0)
        x1, y1 = view.to_px(i * step, view.wy1)
        lines.append(
            f'<line x1="{fnum(x0)}" y1="{fnum(y0)}" x2="{fnum(x1)}" y2="{fnum(y1)}" '
            f'stroke="#bbbbbb" stroke-width="{fnum(width)}"/>'
        )
    for j in range(math.ceil(view.wy0 / step), math.floor(view.wy1 / step) + 1):
        x0, y0 = view.to_px(view.wx0, j * step)
        x1, y1 = view.to_px(view.wx1, j * step)
        lines.append(
            f'<line x1="{fnum(x0)}" y1="{fnum(y0)}" x2="{fnum(x1)}" y2="{fnum(y1)}" '
            f'stroke="#bbbbbb" stroke-width="{fnum(width)}"/>'
        )
    return lines


def _panel_body(poly: Polyline, opts: RenderOptions) -> list[str]:
    view = _Viewport(poly, opts)
    body = []
    if opts.grid_step is not None:
        body.extend(_grid_lines(view, opts.grid_step, opts.stroke_width))
    body.append(
        f'<path d="{_path_d(poly, view)}" fill="none" stroke="#000000" '
        f'stroke-width="{fnum(opts.stroke_width)}" stroke-linejoin="round"/>'
    )
    return body


def render_svg(poly: Polyline, opts: RenderOptions = RenderOptions()) -> str:
    """A single-panel SVG document with one path for the polyline."""
    body = _panel_body(poly, opts)
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{opts.width}" '
        f'height="{opts.height}" viewBox="0 0 {opts.width} {opts.height}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def render_panels(
    polys: Sequence[Polyline], opts: RenderOptions = RenderOptions()
) -> str:
    """Side-by-side panels, one per polyline (the camera-series layout)."""
    if not polys:
        raise ValueError("render_panels needs at least one polyline")
    total_w = opts.width * len(polys) + _PANEL_GAP * (len(polys) - 1)
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{fnum(total_w)}" '
        f'height="{opts.height}" viewBox="0 0 {fnum(total_w)} {opts.height}">'
    )
    chunks = [head]
    for i, poly in enumerate(polys):
        dx = i * (opts.width + _PANEL_GAP)
        chunks.append(f'<g transform="translate({fnum(dx)} 0)">')
        chunks.extend(_panel_body(poly, opts))
        chunks.append("</g>")
    chunks.append("</svg>")
    return "\n".join(chunks) + "\n"
