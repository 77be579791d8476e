from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Tuple

from errors import IndexRangeError
from geometry import OrthoPolygon, Point, ensure_valid
from partition import VisNode, VisTree, independence_classes, window_partition
from pyramids import GuardTree, decompose

logger = logging.getLogger(__name__)

MODES = ("strong", "cf")


# -----------------------------
# Ruler sequence
# -----------------------------
@lru_cache(maxsize=32)
def ruler_sequence(i: int) -> Tuple[int, ...]:
    """s_1 = (1); s_i = s_{i-1} + (i,) + s_{i-1}."""
    if i < 1:
        raise IndexRangeError(f"ruler word index must be >= 1, got {i}")
    if i == 1:
        return (1,)
    prev = ruler_sequence(i - 1)
    return prev + (i,) + prev


def ruler_order(height: int) -> int:
    """Smallest i whose ruler word has at least ``height`` symbols."""
    return max(1, height.bit_length())


# -----------------------------
# Guardings
# -----------------------------
@dataclass(frozen=True)
class Guard:
    point: Point
    color: int
    group: Optional[int] = None
    local: Optional[int] = None


@dataclass(frozen=True)
class ChromaticGuarding:
    guards: Tuple[Guard, ...]
    model: str = "r"

    @property
    def t(self) -> int:
        return max((g.color for g in self.guards), default=0)

    @property
    def distinct_colors(self) -> int:
        return len({g.color for g in self.guards})

    @classmethod
    def of(cls, pairs: Iterable[Tuple[Point, int]], model: str = "r") -> "ChromaticGuarding":
        return cls(tuple(Guard(p, c) for p, c in pairs), model)


@dataclass
class GuardForest:
    vis_tree: VisTree
    trees: List[Tuple[VisNode, GuardTree]]


def guard_forest(poly: OrthoPolygon) -> GuardForest:
    ensure_valid(poly)
    vis = window_partition(poly)
    return GuardForest(vis, [(node, decompose(node.wvp)) for node in vis.nodes])


def _assemble(poly: OrthoPolygon, mode: str) -> ChromaticGuarding:
    if mode not in MODES:
        raise ValueError(f"unknown coloring mode {mode!r}")
    forest = guard_forest(poly)
    classes = independence_classes(forest.vis_tree)
    placed = []
    for node, tree in forest.trees:
        group = classes.group_of(node.id)
        word = ruler_sequence(ruler_order(tree.height)) if mode == "cf" else None
        for g in tree.nodes:
            local = g.depth if word is None else word[g.depth - 1]
            placed.append((node.id, g.id, group, local, g.guard))
    width = max(local for _, _, _, local, _ in placed)
    guards = tuple(
        Guard(point, (group - 1) * width + local, group, local)
        for _, _, group, local, point in sorted(placed, key=lambda rec: rec[:2])
    )
    result = ChromaticGuarding(guards, "r")
    logger.info("%s coloring: %d guard(s), %d color(s)", mode, len(guards), result.distinct_colors)
    return result


def strong_coloring(poly: OrthoPolygon) -> ChromaticGuarding:
    return _assemble(poly, "strong")


def cf_coloring(poly: OrthoPolygon) -> ChromaticGuarding:
    return _assemble(poly, "cf")


def color(poly: OrthoPolygon, mode: str) -> ChromaticGuarding:
    return _assemble(poly, mode)
