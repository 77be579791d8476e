"""Window partition of a polygon into weak r-visibility polygons.

A weak r-visibility polygon is grown from a base segment lying on a grid
line: every grid lane crossing the base is walked away from it while the
cells stay in the current component. What is left of the component splits
into pieces, each attached through one window; those windows are the bases
of the children.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

import numpy as np

from cells import CellGrid, trace_outline
from errors import IndexRangeError, PartitionError
from geometry import OrthoPolygon, Point, classify_vertices, ensure_valid, VertexKind

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]
Segment = Tuple[Point, Point]


def _cell(axis: str, lane: int, travel: int) -> Cell:
    return (lane, travel) if axis == "h" else (travel, lane)


def _direction(axis: str, step: int) -> Tuple[int, int]:
    return (0, step) if axis == "h" else (step, 0)


def _rot_ccw(d: Tuple[int, int]) -> Tuple[int, int]:
    return -d[1], d[0]


@dataclass(frozen=True)
class Window:
    segment: Segment
    side: str
    axis: str
    lanes: range
    origin: int
    step: int
    component: FrozenSet[Cell] = field(repr=False, compare=False)


@dataclass(frozen=True)
class WeakVisPolygon:
    """Histogram hanging off ``base``.

    ``axis`` is "h" for a horizontal base (lanes are grid columns, travel
    runs along y) and "v" for a vertical one. ``depths[i]`` is the number of
    cells in lane ``lanes[i]``; row r of a lane is the r-th cell from the base.
    """

    grid: CellGrid = field(repr=False, compare=False)
    axis: str
    lanes: range
    origin: int
    step: int
    depths: Tuple[int, ...]
    base: Segment
    windows: Tuple[Window, ...] = ()

    def cell_at(self, lane: int, row: int) -> Cell:
        return _cell(self.axis, lane, self.origin + self.step * (row - 1))

    @cached_property
    def cells(self) -> FrozenSet[Cell]:
        return frozenset(
            self.cell_at(lane, r) for lane, h in zip(self.lanes, self.depths) for r in range(1, h + 1)
        )

    @cached_property
    def subpolygon(self) -> OrthoPolygon:
        return trace_outline(self.cells, self.grid.xcuts, self.grid.ycuts)

    @property
    def travel(self) -> Tuple[int, int]:
        return _direction(self.axis, self.step)


def _grow(grid: CellGrid, component: Set[Cell], axis: str, lanes: range, origin: int, step: int, base: Segment) -> WeakVisPolygon:
    depths = []
    for lane in lanes:
        h = 0
        while _cell(axis, lane, origin + step * h) in component:
            h += 1
        if h == 0:
            raise PartitionError(f"base lane {lane} does not enter the component")
        depths.append(h)
    wvp = WeakVisPolygon(grid, axis, lanes, origin, step, tuple(depths), base)
    region = wvp.cells

    rest = component - region
    label: Dict[Cell, int] = {}
    pieces: List[Set[Cell]] = []
    for start in sorted(rest):
        if start in label:
            continue
        piece = {start}
        label[start] = len(pieces)
        todo = deque([start])
        while todo:
            a, b = todo.popleft()
            for nb in ((a + 1, b), (a - 1, b), (a, b + 1), (a, b - 1)):
                if nb in rest and nb not in label:
                    label[nb] = len(pieces)
                    piece.add(nb)
                    todo.append(nb)
        pieces.append(piece)

    contacts: Dict[int, Set[Tuple[int, int, int]]] = {}
    for lane, h in zip(lanes, depths):
        for r in range(h):
            travel = origin + step * r
            for other in (lane - 1, lane + 1):
                nb = _cell(axis, other, travel)
                if nb in label:
                    contacts.setdefault(label[nb], set()).add((lane, other, travel))

    parent_dir = _direction(axis, step)
    child_axis = "v" if axis == "h" else "h"
    cuts_lane = grid.xcuts if axis == "h" else grid.ycuts
    cuts_travel = grid.ycuts if axis == "h" else grid.xcuts
    windows = []
    for idx, piece in enumerate(pieces):
        touch = contacts.get(idx)
        if not touch:
            raise PartitionError("component piece is not attached to the region")
        pairs = {(lane, other) for lane, other, _ in touch}
        travels = sorted(t for _, _, t in touch)
        if len(pairs) != 1 or travels[-1] - travels[0] + 1 != len(travels):
            raise PartitionError("component piece is attached through more than one window")
        lane, other = pairs.pop()
        line = cuts_lane[max(lane, other)]
        lo, hi = cuts_travel[travels[0]], cuts_travel[travels[-1] + 1]
        if axis == "h":
            segment = (Point(line, lo), Point(line, hi))
        else:
            segment = (Point(lo, line), Point(hi, line))
        child_step = other - lane
        side = "L" if _direction(child_axis, child_step) == _rot_ccw(parent_dir) else "R"
        windows.append(
            Window(segment, side, child_axis, range(travels[0], travels[-1] + 1), other, child_step, frozenset(piece))
        )
    windows.sort(key=lambda w: (min(w.segment[0].x, w.segment[1].x), -max(w.segment[0].y, w.segment[1].y)))
    return WeakVisPolygon(grid, axis, lanes, origin, step, tuple(depths), base, tuple(windows))


def _inside_set(grid: CellGrid) -> Set[Cell]:
    return {(int(a), int(b)) for a, b in np.argwhere(grid.inside)}


def _horizontal_base(poly: OrthoPolygon, e: int) -> Tuple[range, int, int, Segment]:
    grid = poly.grid
    p, q = poly.edge(e)
    if p.y != q.y:
        raise PartitionError(f"edge {e} is not horizontal")
    labels = classify_vertices(poly).labels
    if labels[e] != VertexKind.CONVEX or labels[(e + 1) % poly.n] != VertexKind.CONVEX:
        raise PartitionError(f"edge {e} does not join two convex vertices")
    xs = grid.xcuts
    lanes = range(xs.index(min(p.x, q.x)), xs.index(max(p.x, q.x)))
    j = grid.ycuts.index(p.y)
    # CCW: interior lies left of the edge, so a westward edge has the interior below
    if q.x < p.x:
        return lanes, j - 1, -1, (q, p)
    return lanes, j, 1, (p, q)


def weak_vis_polygon(poly: OrthoPolygon, e: int) -> WeakVisPolygon:
    ensure_valid(poly)
    if not 0 <= e < poly.n:
        raise IndexRangeError(f"edge {e} outside [0, {poly.n - 1}]")
    lanes, origin, step, base = _horizontal_base(poly, e)
    return _grow(poly.grid, _inside_set(poly.grid), "h", lanes, origin, step, base)


def root_edge(poly: OrthoPolygon) -> int:
    """Leftmost of the highest horizontal edges."""
    top = max(v.y for v in poly.vertices)
    candidates = [
        (min(p.x, q.x), i) for i, (p, q) in enumerate(poly.edges()) if p.y == q.y == top
    ]
    return min(candidates)[1]


# -----------------------------
# Vis tree
# -----------------------------
@dataclass
class VisNode:
    id: int
    parent: Optional[int]
    side: str
    depth: int
    wvp: WeakVisPolygon
    children: List[int] = field(default_factory=list)

    @property
    def group(self) -> int:
        return 2 * (self.depth % 3) + (0 if self.side == "L" else 1) + 1


@dataclass
class VisTree:
    nodes: List[VisNode]
    root_edge: int

    @property
    def root(self) -> VisNode:
        return self.nodes[0]

    @property
    def height(self) -> int:
        return max(node.depth for node in self.nodes)


def window_partition(poly: OrthoPolygon) -> VisTree:
    ensure_valid(poly)
    grid = poly.grid
    e = root_edge(poly)
    lanes, origin, step, base = _horizontal_base(poly, e)
    root = _grow(grid, _inside_set(grid), "h", lanes, origin, step, base)
    nodes = [VisNode(0, None, "L", 0, root)]
    todo = deque([0])
    while todo:
        node = nodes[todo.popleft()]
        for w in node.wvp.windows:
            child = _grow(grid, set(w.component), w.axis, w.lanes, w.origin, w.step, w.segment)
            nodes.append(VisNode(len(nodes), node.id, w.side, node.depth + 1, child))
            node.children.append(len(nodes) - 1)
            todo.append(len(nodes) - 1)
    logger.info("window partition: %d node(s), height %d", len(nodes), max(n.depth for n in nodes))
    return VisTree(nodes, e)


# -----------------------------
# Independence classes
# -----------------------------
GROUP_LABELS = {2 * d + s + 1: f"A{d}{'LR'[s]}" for d in range(3) for s in range(2)}


@dataclass(frozen=True)
class IndependenceClasses:
    groups: Dict[int, Tuple[int, ...]]

    def group_of(self, node_id: int) -> int:
        for g, members in self.groups.items():
            if node_id in members:
                return g
        raise IndexRangeError(f"node {node_id} is in no group")

    def labelled(self) -> Dict[str, Tuple[int, ...]]:
        return {GROUP_LABELS[g]: members for g, members in self.groups.items()}


def independence_classes(tree: VisTree) -> IndependenceClasses:
    groups: Dict[int, List[int]] = {g: [] for g in range(1, 7)}
    for node in tree.nodes:
        groups[node.group].append(node.id)
    return IndependenceClasses({g: tuple(members) for g, members in groups.items()})


def footprint(wvp: WeakVisPolygon) -> np.ndarray:
    """Cells r-visible from some interior cell of the node."""
    mask = np.zeros(wvp.grid.shape, dtype=bool)
    for a, b in wvp.cells:
        mask |= wvp.grid.visible_from(a, b)
    return mask
