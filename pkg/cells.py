"""Vertex-grid refinement of an orthogonal polygon.

Grid lines run through every vertex coordinate; each resulting cell is
entirely inside or entirely outside the polygon, so every r-visibility
question reduces to "are all cells of this block inside".
"""
from __future__ import annotations

import bisect
import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from errors import ChromaError
from geometry import OrthoPolygon, Point

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class CellId:
    a: int
    b: int
    point: Point


class CellGrid:
    """Inside mask over the grid; ``inside[a, b]`` is the cell
    ``[xcuts[a], xcuts[a+1]] x [ycuts[b], ycuts[b+1]]``."""

    def __init__(self, xcuts: Sequence[Fraction], ycuts: Sequence[Fraction], inside: np.ndarray):
        self.xcuts: Tuple[Fraction, ...] = tuple(Fraction(x) for x in xcuts)
        self.ycuts: Tuple[Fraction, ...] = tuple(Fraction(y) for y in ycuts)
        inside = np.asarray(inside, dtype=bool)
        if inside.shape != (len(self.xcuts) - 1, len(self.ycuts) - 1):
            raise ChromaError(f"inside mask shape {inside.shape} does not match the cuts")
        self.inside = inside.copy()
        self.inside.setflags(write=False)
        self._sat = np.zeros((inside.shape[0] + 1, inside.shape[1] + 1), dtype=np.int64)
        self._sat[1:, 1:] = inside.astype(np.int64).cumsum(axis=0).cumsum(axis=1)
        self._sat.setflags(write=False)

    def __repr__(self) -> str:
        return f"CellGrid({self.shape[0]}x{self.shape[1]}, inside={self.inside_count})"

    @property
    def shape(self) -> Tuple[int, int]:
        return self.inside.shape

    @property
    def inside_count(self) -> int:
        return int(self._sat[-1, -1])

    def center(self, a: int, b: int) -> Point:
        return Point((self.xcuts[a] + self.xcuts[a + 1]) / 2, (self.ycuts[b] + self.ycuts[b + 1]) / 2)

    def cell(self, a: int, b: int) -> CellId:
        return CellId(a, b, self.center(a, b))

    def inside_cells(self) -> List[CellId]:
        return [self.cell(int(a), int(b)) for a, b in np.argwhere(self.inside)]

    def cell_of_point(self, p: Point) -> Optional[Tuple[int, int]]:
        """Grid cell whose open interior contains p, or None if p is on a grid line or off the grid."""
        a = bisect.bisect_left(self.xcuts, p.x) - 1
        b = bisect.bisect_left(self.ycuts, p.y) - 1
        if not (0 <= a < self.shape[0] and 0 <= b < self.shape[1]):
            return None
        if p.x == self.xcuts[a + 1] or p.y == self.ycuts[b + 1]:
            return None
        return a, b

    # -----------------------------
    # Block queries
    # -----------------------------
    def block_count(self, a0: int, a1: int, b0: int, b1: int) -> int:
        s = self._sat
        return int(s[a1, b1] - s[a0, b1] - s[a1, b0] + s[a0, b0])

    def all_inside(self, a0: int, a1: int, b0: int, b1: int) -> bool:
        """Half-open index block [a0, a1) x [b0, b1) is non-empty and fully inside."""
        if a0 < 0 or b0 < 0 or a1 > self.shape[0] or b1 > self.shape[1] or a0 >= a1 or b0 >= b1:
            return False
        return self.block_count(a0, a1, b0, b1) == (a1 - a0) * (b1 - b0)

    @staticmethod
    def _span(cuts: Sequence[Fraction], lo: Fraction, hi: Fraction) -> Tuple[int, int]:
        if lo < hi:
            return bisect.bisect_right(cuts, lo) - 1, bisect.bisect_left(cuts, hi)
        # degenerate extent: every cell whose closure touches the coordinate
        return max(bisect.bisect_left(cuts, lo) - 1, 0), min(bisect.bisect_right(cuts, lo), len(cuts) - 1)

    def covers(self, x_lo: Fraction, x_hi: Fraction, y_lo: Fraction, y_hi: Fraction) -> bool:
        """Exact test that the closed rectangle lies in the closed polygon."""
        if x_lo < self.xcuts[0] or x_hi > self.xcuts[-1] or y_lo < self.ycuts[0] or y_hi > self.ycuts[-1]:
            return False
        a0, a1 = self._span(self.xcuts, x_lo, x_hi)
        b0, b1 = self._span(self.ycuts, y_lo, y_hi)
        if a0 >= a1 or b0 >= b1:
            return False
        if x_lo < x_hi and y_lo < y_hi:
            return self.all_inside(a0, a1, b0, b1)
        block = self.inside[a0:a1, b0:b1]
        if x_lo == x_hi:
            block = block.any(axis=0, keepdims=True)
        if y_lo == y_hi:
            block = block.any(axis=1, keepdims=True)
        return bool(block.all())

    def chord_interior(self, axis: str, level: Fraction, lo: Fraction, hi: Fraction) -> bool:
        """Whether the open chord at ``level`` between grid coordinates lo < hi runs through int P."""
        along, across = (self.xcuts, self.ycuts) if axis == "h" else (self.ycuts, self.xcuts)
        j = bisect.bisect_left(across, level)
        if j == 0 or j >= len(across) - 1 or across[j] != level:
            return False
        i0, i1 = bisect.bisect_left(along, lo), bisect.bisect_left(along, hi)
        if axis == "h":
            return self.all_inside(i0, i1, j - 1, j + 1)
        return self.all_inside(j - 1, j + 1, i0, i1)

    # -----------------------------
    # Cell visibility
    # -----------------------------
    def visible_from(self, a: int, b: int) -> np.ndarray:
        """Mask of cells r-visible from cell (a, b): their joint hull is fully inside."""
        nx, ny = self.shape
        if not self.inside[a, b]:
            return np.zeros((nx, ny), dtype=bool)
        xa = np.arange(nx)[:, None]
        yb = np.arange(ny)[None, :]
        a0, a1 = np.minimum(xa, a), np.maximum(xa, a) + 1
        b0, b1 = np.minimum(yb, b), np.maximum(yb, b) + 1
        s = self._sat
        count = s[a1, b1] - s[a0, b1] - s[a1, b0] + s[a0, b0]
        return count == (a1 - a0) * (b1 - b0)

    def visibility_bits(self) -> Tuple[List[CellId], List[int]]:
        """Inside cells in (a, b) order and, per cell, the bitset of inside cells it r-sees."""
        cells = self.inside_cells()
        flat = self.inside.ravel()
        bits = []
        for c in cells:
            vec = self.visible_from(c.a, c.b).ravel()[flat]
            bits.append(int.from_bytes(np.packbits(vec, bitorder="little").tobytes(), "little"))
        return cells, bits


def build_grid(poly: OrthoPolygon) -> CellGrid:
    xcuts = sorted({v.x for v in poly.vertices})
    ycuts = sorted({v.y for v in poly.vertices})
    xi = {x: i for i, x in enumerate(xcuts)}
    yi = {y: j for j, y in enumerate(ycuts)}
    toggles = np.zeros((len(xcuts) - 1, len(ycuts)), dtype=np.int8)
    for p, q in poly.edges():
        if p.y == q.y and p.x != q.x:
            lo, hi = sorted((xi[p.x], xi[q.x]))
            toggles[lo:hi, yi[p.y]] ^= 1
    # a cell is inside iff an odd number of horizontal edges lies above it
    above = np.cumsum(toggles[:, ::-1], axis=1)[:, ::-1]
    inside = (above[:, 1:] % 2).astype(bool)
    grid = CellGrid(xcuts, ycuts, inside)
    logger.debug("built %r", grid)
    return grid


def cells_r_visible(c1: CellId, c2: CellId, grid: CellGrid) -> bool:
    return grid.all_inside(min(c1.a, c2.a), max(c1.a, c2.a) + 1, min(c1.b, c2.b), max(c1.b, c2.b) + 1)


def canonical_cells(grid: CellGrid) -> List[List[CellId]]:
    """Group inside cells by identical r-visibility sets, in order of first member."""
    cells, bits = grid.visibility_bits()
    classes: Dict[int, List[CellId]] = {}
    for c, key in zip(cells, bits):
        classes.setdefault(key, []).append(c)
    return list(classes.values())


def trace_outline(cells: Iterable[Tuple[int, int]], xcuts: Sequence[Fraction], ycuts: Sequence[Fraction]) -> OrthoPolygon:
    """CCW outline of a simply connected, edge-connected set of grid cells."""
    sides = set()
    for a, b in cells:
        corners = [(a, b), (a + 1, b), (a + 1, b + 1), (a, b + 1)]
        for s, e in zip(corners, corners[1:] + corners[:1]):
            if (e, s) in sides:
                sides.discard((e, s))
            else:
                sides.add((s, e))
    if not sides:
        raise ChromaError("cannot trace the outline of an empty cell set")
    nxt = defaultdict(list)
    for s, e in sides:
        nxt[s].append(e)
    if any(len(v) > 1 for v in nxt.values()):
        raise ChromaError("cell set touches itself at a corner")
    start = min(nxt, key=lambda v: (v[1], v[0]))
    loop = [start]
    while True:
        here = nxt[loop[-1]][0]
        if here == start:
            break
        loop.append(here)
    if len(loop) != len(sides):
        raise ChromaError("cell set is not simply connected")
    corners = []
    for i, v in enumerate(loop):
        prev, after = loop[i - 1], loop[(i + 1) % len(loop)]
        if (v[0] - prev[0], v[1] - prev[1]) != (after[0] - v[0], after[1] - v[1]):
            corners.append(Point(xcuts[v[0]], ycuts[v[1]]))
    return OrthoPolygon(tuple(corners))
