"""SVG drawings of polygons, grid cells and coloured guards."""
from __future__ import annotations

import bisect
import colorsys
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import svgwrite

import config
from chromatic import ChromaticGuarding
from geometry import OrthoPolygon
from spikes import recognize_spike, row_bottom

logger = logging.getLogger(__name__)

MARGIN = 16


@dataclass(frozen=True)
class RenderSpec:
    scale: float = config.RENDER_SCALE
    show_cells: bool = False
    squash_rows: bool = False


def _hue(color_id: int) -> Fraction:
    # dyadic fractions in breadth-first order: 0, 1/2, 1/4, 3/4, 1/8, ...
    idx = color_id - 1
    if idx <= 0:
        return Fraction(0)
    level = idx.bit_length()
    return Fraction(2 * (idx - (1 << (level - 1))) + 1, 1 << level)


def palette(color_id: int) -> str:
    r, g, b = colorsys.hsv_to_rgb(float(_hue(color_id)), 0.75, 0.9)
    return "#{:02x}{:02x}{:02x}".format(round(r * 255), round(g * 255), round(b * 255))


def _squash(ycuts) -> Callable[[Fraction], Fraction]:
    """Maps y so that consecutive grid lines are one unit apart."""

    def f(y: Fraction) -> Fraction:
        j = bisect.bisect_right(ycuts, y) - 1
        j = min(max(j, 0), len(ycuts) - 2)
        lo, hi = ycuts[j], ycuts[j + 1]
        return j + (y - lo) / (hi - lo)

    return f


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def render(poly: OrthoPolygon, guarding: Optional[ChromaticGuarding] = None, spec: RenderSpec = RenderSpec()) -> str:
    grid = poly.grid
    ymap: Callable[[Fraction], Fraction] = _squash(grid.ycuts) if spec.squash_rows else (lambda y: y)
    x0, x1 = grid.xcuts[0], grid.xcuts[-1]
    y0, y1 = ymap(grid.ycuts[0]), ymap(grid.ycuts[-1])
    legend_rows = sorted({g.color for g in guarding.guards}) if guarding else []
    width = float(x1 - x0) * spec.scale + 2 * MARGIN + 160
    height = max(float(y1 - y0) * spec.scale, 18 * len(legend_rows)) + 2 * MARGIN

    def sx(x: Fraction) -> str:
        return _fmt(float(x - x0) * spec.scale + MARGIN)

    def sy(y: Fraction) -> str:
        return _fmt(float(y1 - ymap(y)) * spec.scale + MARGIN)

    dwg = svgwrite.Drawing(size=(_fmt(width), _fmt(height)), profile="tiny", debug=False)

    if spec.show_cells:
        cells = dwg.g(id="cells", fill="#eef2f7", stroke="#c4ccd8")
        for a, b in zip(*grid.inside.nonzero()):
            xa, xb = grid.xcuts[a], grid.xcuts[a + 1]
            ya, yb = grid.ycuts[b], grid.ycuts[b + 1]
            cells.add(dwg.polygon([(sx(xa), sy(ya)), (sx(xb), sy(ya)), (sx(xb), sy(yb)), (sx(xa), sy(yb))]))
        dwg.add(cells)

    outline = dwg.g(id="outline", stroke="black", fill="none")
    for p, q in poly.edges():
        outline.add(dwg.line((sx(p.x), sy(p.y)), (sx(q.x), sy(q.y))))
    dwg.add(outline)

    spike = recognize_spike(poly) if spec.squash_rows else None
    if spike is not None and spike.stretched:
        notes = dwg.g(id="rows", font_size="10")
        for i in range(1, spike.m + 1):
            exp = (i - 1) * spike.m
            label = f"row {i}: depth {'1' if exp == 0 else f'2^{exp}'}"
            notes.add(dwg.text(label, insert=(sx(x1 + Fraction(1, 4)), sy(Fraction(-row_bottom(spike.m, i, True))))))
        dwg.add(notes)

    if guarding:
        disks = dwg.g(id="guards", font_size="9")
        radius = _fmt(max(spec.scale / 6, 2))
        for g in guarding.guards:
            cx, cy = sx(g.point.x), sy(g.point.y)
            disks.add(dwg.circle(center=(cx, cy), r=radius, fill=palette(g.color), stroke="black"))
            disks.add(dwg.text(str(g.color), insert=(cx, cy)))
        dwg.add(disks)

    legend = dwg.g(id="legend", font_size="10")
    lx = float(x1 - x0) * spec.scale + 2 * MARGIN
    for row, c in enumerate(legend_rows):
        legend.add(dwg.rect(insert=(_fmt(lx), _fmt(MARGIN + 18 * row)), size=("12", "12"), fill=palette(c)))
        legend.add(dwg.text(f"color {c}", insert=(_fmt(lx + 16), _fmt(MARGIN + 18 * row + 10))))
    dwg.add(legend)

    logger.info("rendered %d edge(s), %d guard(s)", poly.n, len(guarding.guards) if guarding else 0)
    return dwg.tostring()
