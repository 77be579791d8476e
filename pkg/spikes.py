"""Spike polygons S_m and their vertically stretched variants.

Column k (1 <= k <= 2^m - 1) occupies x in [2(k-1), 2k]; the x axis is
doubled so that column midlines and special points stay integral. The
top edge is y = 0 and column k hangs down d_m(k) = m - pi2(k) rows.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

import config
from errors import IndexRangeError
from geometry import OrthoPolygon, Point

logger = logging.getLogger(__name__)


# -----------------------------
# Column arithmetic
# -----------------------------
def pi2(k: int) -> int:
    """Multiplicity of the factor 2 in k."""
    if k < 1:
        raise IndexRangeError(f"pi2 needs a positive integer, got {k}")
    return (k & -k).bit_length() - 1


def column_count(m: int) -> int:
    return (1 << m) - 1


def _check_column(m: int, k: int) -> None:
    if m < 1:
        raise IndexRangeError(f"m must be >= 1, got {m}")
    if not 1 <= k <= column_count(m):
        raise IndexRangeError(f"column {k} outside [1, {column_count(m)}] for m={m}")


def depth(m: int, k: int) -> int:
    _check_column(m, k)
    return m - pi2(k)


def column_depths(m: int) -> List[int]:
    return [depth(m, k) for k in range(1, column_count(m) + 1)]


def block(k: int) -> range:
    w = (1 << pi2(k)) - 1
    return range(k - w, k + w + 1)


def block_left(k: int) -> range:
    return range(k - (1 << pi2(k)) + 1, k)


def block_right(k: int) -> range:
    return range(k + 1, k + (1 << pi2(k)))


def left_center(k: int) -> Optional[int]:
    p = pi2(k)
    return k - (1 << (p - 1)) if p >= 1 else None


def right_center(k: int) -> Optional[int]:
    p = pi2(k)
    return k + (1 << (p - 1)) if p >= 1 else None


HALVES = ("L", "R")
QUARTERS = ("LL", "LR", "RL", "RR")


def half_block(k: int, side: str) -> range:
    return block_left(k) if side == "L" else block_right(k)


def quarter_block(k: int, xy: str) -> range:
    """B_XY(k) = B_Y of the X-side centre; empty for odd k."""
    centre = left_center(k) if xy[0] == "L" else right_center(k)
    if centre is None:
        return range(k, k)
    return half_block(centre, xy[1])


@dataclass(frozen=True)
class Blocks:
    m: int
    k: int
    depth: int
    block: range
    left: range
    right: range
    l: Optional[int]
    r: Optional[int]
    quarters: Tuple[Tuple[str, range], ...]


def block_ops(m: int, k: int) -> Blocks:
    _check_column(m, k)
    return Blocks(
        m=m,
        k=k,
        depth=depth(m, k),
        block=block(k),
        left=block_left(k),
        right=block_right(k),
        l=left_center(k),
        r=right_center(k),
        quarters=tuple((xy, quarter_block(k, xy)) for xy in QUARTERS),
    )


def midline(k: int) -> int:
    return 2 * k - 1


def wing(m: int, k: int, p: Point) -> str:
    """W_L strictly left of column k's midline, W_R otherwise."""
    _check_column(m, k)
    return "L" if p.x < midline(k) else "R"


# -----------------------------
# Rows
# -----------------------------
def row_bottom(m: int, i: int, stretched: bool = False) -> int:
    """Depth below the top edge of the lower side of row i."""
    if i < 0 or i > m:
        raise IndexRangeError(f"row {i} outside [0, {m}]")
    if not stretched or i == 0:
        return i
    return 1 << ((i - 1) * m)


def row_heights(m: int, stretched: bool = False) -> List[int]:
    return [row_bottom(m, i, stretched) - row_bottom(m, i - 1, stretched) for i in range(1, m + 1)]


def geometric_depth(m: int, k: int, stretched: bool = False) -> int:
    return row_bottom(m, depth(m, k), stretched)


def special_point(m: int, i: int, k: int, stretched: bool = False) -> Point:
    """Midpoint of the lower side of cell R_{i,k}."""
    d = depth(m, k)
    if not 1 <= i <= d:
        raise IndexRangeError(f"row {i} outside [1, {d}] in column {k}")
    return Point(Fraction(midline(k)), Fraction(-row_bottom(m, i, stretched)))


def cell_index(m: int, i: int, k: int) -> Tuple[int, int]:
    """Grid cell (a, b) of R_{i,k}; the grid's y cuts ascend, so row 1 is the top grid row."""
    return k - 1, m - i


def row_column(m: int, a: int, b: int) -> Tuple[int, int]:
    return m - b, a + 1


# -----------------------------
# Generator
# -----------------------------
@dataclass(frozen=True)
class SpikeSpec:
    m: int
    stretched: bool = False

    @property
    def columns(self) -> int:
        return column_count(self.m)

    @property
    def polygon(self) -> OrthoPolygon:
        return gen_spike(self.m, self.stretched)


@lru_cache(maxsize=64)
def gen_spike(m: int, stretched: bool = False) -> OrthoPolygon:
    if m < 1:
        raise IndexRangeError(f"m must be >= 1, got {m}")
    cap = config.MAX_STRETCHED_M if stretched else config.MAX_SPIKE_M
    if m > cap:
        raise IndexRangeError(f"m={m} exceeds the configured cap {cap}")
    vertices = []
    n_cols = column_count(m)
    for k in range(1, n_cols + 1):
        y = -geometric_depth(m, k, stretched)
        vertices.append(Point.of(2 * (k - 1), y))
        vertices.append(Point.of(2 * k, y))
    vertices.append(Point.of(2 * n_cols, 0))
    vertices.append(Point.of(0, 0))
    logger.debug("generated %s S_%d with %d vertices", "stretched" if stretched else "plain", m, len(vertices))
    return OrthoPolygon(tuple(vertices))


def recognize_spike(poly: OrthoPolygon) -> Optional[SpikeSpec]:
    """The SpikeSpec whose generator output equals poly up to the starting vertex."""
    n = poly.n
    if n < 4 or n & (n - 1):
        return None
    m = n.bit_length() - 2
    for stretched in (False, True):
        cap = config.MAX_STRETCHED_M if stretched else config.MAX_SPIKE_M
        if m > cap:
            continue
        ref = gen_spike(m, stretched).vertices
        try:
            shift = poly.vertices.index(ref[0])
        except ValueError:
            continue
        if poly.vertices[shift:] + poly.vertices[:shift] == ref:
            return SpikeSpec(m, stretched)
    return None


# -----------------------------
# Lower-bound sizes
# -----------------------------
def lb_size(t: int, model: str = "r") -> int:
    if t < 1:
        raise IndexRangeError(f"t must be >= 1, got {t}")
    if model not in ("r", "l"):
        raise ValueError(f"unknown visibility model {model!r}")
    size = 2 if model == "r" else 3
    for s in range(2, t + 1):
        size = 1 + s * size if model == "r" else 1 + s * (size + 1)
    return size
