"""Truncation of a weak r-visibility polygon into pyramids and the guard tree.

Everything works on the lane depth profile of the histogram: lane i holds
rows 1..h[i] counted from the base. A c-edge is a maximal plateau whose
neighbours are shallower (walls count as depth 0); an r-edge is an interior
plateau whose neighbours are both deeper.
"""
from __future__ import annotations

import bisect
import dataclasses
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from cells import CellGrid
from errors import PartitionError
from geometry import Point
from partition import WeakVisPolygon, _cell

logger = logging.getLogger(__name__)

Plateau = Tuple[int, int]


def _plateaus(h: Sequence[int]) -> List[Plateau]:
    runs, start = [], 0
    for i in range(1, len(h) + 1):
        if i == len(h) or h[i] != h[start]:
            runs.append((start, i - 1))
            start = i
    return runs


def c_edges(h: Sequence[int]) -> List[Plateau]:
    out = []
    for lo, hi in _plateaus(h):
        left = h[lo - 1] if lo > 0 else 0
        right = h[hi + 1] if hi + 1 < len(h) else 0
        if left < h[lo] and right < h[lo]:
            out.append((lo, hi))
    return out


def r_edges(h: Sequence[int]) -> List[Plateau]:
    return [
        (lo, hi)
        for lo, hi in _plateaus(h)
        if lo > 0 and hi + 1 < len(h) and h[lo - 1] > h[lo] and h[hi + 1] > h[lo]
    ]


@dataclass(frozen=True)
class Pyramid:
    """Lanes ``lanes[0]..lanes[-1]`` (positions in the node's lane range) with
    rows ``cut+1..tops[i]``; the guard sits in row ``cut+1`` of ``guard_lane``."""

    stage: int
    lanes: range
    cut: int
    tops: Tuple[int, ...]
    level: int
    c_edge: range
    solid: range
    guard_lane: int
    axis: str = field(repr=False)
    lane_ids: range = field(repr=False)
    origin: int = field(repr=False)
    step: int = field(repr=False)

    def cells(self) -> List[Tuple[int, int]]:
        out = []
        for pos, top in zip(self.lanes, self.tops):
            lane = self.lane_ids[pos]
            for r in range(self.cut + 1, top + 1):
                out.append(_cell(self.axis, lane, self.origin + self.step * (r - 1)))
        return out

    @property
    def guard_cell(self) -> Tuple[int, int]:
        return _cell(self.axis, self.lane_ids[self.guard_lane], self.origin + self.step * self.cut)


def _lane_cuts(grid: CellGrid, axis: str) -> Tuple[Fraction, ...]:
    return grid.xcuts if axis == "h" else grid.ycuts


def _solid_guard_lane(grid: CellGrid, wvp: WeakVisPolygon, solid: range) -> int:
    cuts = _lane_cuts(grid, wvp.axis)
    lo = cuts[wvp.lanes[solid.start]]
    hi = cuts[wvp.lanes[solid.stop - 1] + 1]
    mid = (lo + hi) / 2
    # on a grid line the lane with the smaller coordinate wins
    lane = bisect.bisect_left(cuts, mid) - 1
    return lane - wvp.lanes.start


def _make_pyramid(wvp: WeakVisPolygon, original: Sequence[int], stage: int, lanes: range, cut: int, plateau: Plateau, h: Sequence[int]) -> Pyramid:
    level = h[plateau[0]]
    on_boundary = [i for i in range(plateau[0], plateau[1] + 1) if original[i] == level]
    if not on_boundary:
        raise PartitionError(f"c-edge at lanes {plateau[0]}..{plateau[1]} has no solid segment")
    end = on_boundary[0]
    while end + 1 in on_boundary:
        end += 1
    solid = range(on_boundary[0], end + 1)
    return Pyramid(
        stage=stage,
        lanes=lanes,
        cut=cut,
        tops=tuple(h[i] for i in lanes),
        level=level,
        c_edge=range(plateau[0], plateau[1] + 1),
        solid=solid,
        guard_lane=_solid_guard_lane(wvp.grid, wvp, solid),
        axis=wvp.axis,
        lane_ids=wvp.lanes,
        origin=wvp.origin,
        step=wvp.step,
    )


def truncate_once(wvp: WeakVisPolygon, stage: int = 1, original: Optional[Sequence[int]] = None) -> Tuple[List[Pyramid], Optional[WeakVisPolygon]]:
    """Cut every pyramid hanging below a c-edge down to its first neighbouring r-edge.

    Returns the cut pyramids and the residual histogram, or the final
    pyramid and None once a single c-edge is left.
    """
    h = list(wvp.depths)
    original = list(original) if original is not None else h
    tops = c_edges(h)
    if len(tops) == 1:
        return [_make_pyramid(wvp, original, stage, range(len(h)), 0, tops[0], h)], None

    valleys = r_edges(h)
    pyramids = []
    for lo, hi in tops:
        left = [h[v[0]] for v in valleys if v[1] < lo]
        right = [h[v[0]] for v in valleys if v[0] > hi]
        neighbours = ([left[-1]] if left else []) + ([right[0]] if right else [])
        if not neighbours:
            raise PartitionError("c-edge without a neighbouring r-edge")
        cut = max(neighbours)
        a, b = lo, hi
        while a > 0 and h[a - 1] > cut:
            a -= 1
        while b + 1 < len(h) and h[b + 1] > cut:
            b += 1
        pyramids.append(_make_pyramid(wvp, original, stage, range(a, b + 1), cut, (lo, hi), h))
    for p in pyramids:
        for i in p.lanes:
            h[i] = p.cut
    residual = dataclasses.replace(wvp, depths=tuple(h), windows=())
    return pyramids, residual


# -----------------------------
# Guard tree
# -----------------------------
@dataclass
class GuardNode:
    id: int
    pyramid: Pyramid
    guard: Point
    parent: Optional[int] = None
    children: List[int] = field(default_factory=list)
    depth: int = 0

    @property
    def stage(self) -> int:
        return self.pyramid.stage


@dataclass
class GuardTree:
    nodes: List[GuardNode]
    root: int
    rounds: int

    @property
    def height(self) -> int:
        return max(n.depth for n in self.nodes)

    def path_to_root(self, node_id: int) -> List[int]:
        path = [node_id]
        while self.nodes[path[-1]].parent is not None:
            path.append(self.nodes[path[-1]].parent)
        return path


def guard_position(pyr: Pyramid, grid: CellGrid) -> Point:
    return grid.center(*pyr.guard_cell)


def decompose(wvp: WeakVisPolygon) -> GuardTree:
    original = list(wvp.depths)
    pyramids: List[Pyramid] = []
    current: Optional[WeakVisPolygon] = wvp
    stage = 0
    while current is not None:
        stage += 1
        cut, current = truncate_once(current, stage, original)
        pyramids.extend(cut)

    nodes = [GuardNode(i, p, guard_position(p, wvp.grid)) for i, p in enumerate(pyramids)]
    by_stage: Dict[int, List[GuardNode]] = {}
    for node in nodes:
        by_stage.setdefault(node.stage, []).append(node)
    for node in nodes:
        lo, hi = node.pyramid.lanes.start, node.pyramid.lanes.stop
        for later in range(node.stage + 1, stage + 1):
            host = next(
                (q for q in by_stage.get(later, []) if q.pyramid.lanes.start <= lo and hi <= q.pyramid.lanes.stop),
                None,
            )
            if host is not None:
                node.parent = host.id
                host.children.append(node.id)
                break
    root = len(nodes) - 1
    for node in nodes:
        node.children.sort(key=lambda c: nodes[c].pyramid.lanes.start)
    todo = [root]
    nodes[root].depth = 1
    while todo:
        node = nodes[todo.pop()]
        for c in node.children:
            nodes[c].depth = node.depth + 1
            todo.append(c)
    logger.info("decomposed %d lane(s) into %d pyramid(s) over %d round(s)", len(original), len(nodes), stage)
    return GuardTree(nodes, root, stage)
