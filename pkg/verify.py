"""Coverage, strong and conflict-free checks of a chromatic guarding.

Under r-visibility the check runs over every inside grid cell: all points
of an open cell see the same guards, and lower-dimensional pieces inherit
the visibility of an incident cell. Under line visibility only the special
points of a spike polygon are checked.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from chromatic import ChromaticGuarding
from errors import GuardPlacementError, UnsupportedModelError
from geometry import OrthoPolygon, Point, ensure_valid, format_coord, l_visible
from spikes import SpikeSpec, column_count, depth, recognize_spike, special_point

logger = logging.getLogger(__name__)

MODELS = ("r", "l")


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: Optional[str] = None
    cell: Optional[Tuple[int, int]] = None
    special: Optional[Tuple[int, int]] = None
    point: Optional[Point] = None
    colors: Dict[int, int] = field(default_factory=dict)
    guards: Tuple[int, ...] = ()

    @property
    def message(self) -> str:
        if self.ok:
            return "ok"
        where = f"cell {self.cell}" if self.cell is not None else f"special point p{self.special}"
        if self.point is not None:
            where += f" at ({format_coord(self.point.x)}, {format_coord(self.point.y)})"
        return f"{self.reason}: {where}"


# -----------------------------
# r-visibility
# -----------------------------
def guard_cells(poly: OrthoPolygon, guarding: ChromaticGuarding) -> List[Tuple[int, int]]:
    grid = poly.grid
    cells = []
    for idx, g in enumerate(guarding.guards):
        cell = grid.cell_of_point(g.point)
        if cell is None or not grid.inside[cell]:
            x, y = g.point.as_strings()
            raise GuardPlacementError(f"guard {idx} at ({x}, {y}) is not strictly inside an inside grid cell")
        cells.append(cell)
    return cells


def _masks(poly: OrthoPolygon, guarding: ChromaticGuarding) -> List[np.ndarray]:
    grid = poly.grid
    cache: Dict[Tuple[int, int], np.ndarray] = {}
    out = []
    for cell in guard_cells(poly, guarding):
        if cell not in cache:
            cache[cell] = grid.visible_from(*cell)
        out.append(cache[cell])
    return out


def _color_counts(masks: List[np.ndarray], guarding: ChromaticGuarding, shape) -> Dict[int, np.ndarray]:
    counts: Dict[int, np.ndarray] = {}
    for mask, g in zip(masks, guarding.guards):
        if g.color not in counts:
            counts[g.color] = np.zeros(shape, dtype=np.int32)
        counts[g.color] += mask
    return counts


def r_multisets(poly: OrthoPolygon, guarding: ChromaticGuarding) -> Dict[Tuple[int, int], Counter]:
    """Colour multiset of the guards r-seeing each inside cell."""
    grid = poly.grid
    counts = _color_counts(_masks(poly, guarding), guarding, grid.shape)
    out = {}
    for a, b in np.argwhere(grid.inside):
        out[(int(a), int(b))] = Counter({c: int(arr[a, b]) for c, arr in counts.items() if arr[a, b]})
    return out


def _witness(poly: OrthoPolygon, masks, guarding, reason: str, bad: np.ndarray, color: Optional[int] = None) -> Verdict:
    a, b = (int(v) for v in np.argwhere(bad)[0])
    seers = tuple(i for i, m in enumerate(masks) if m[a, b] and (color is None or guarding.guards[i].color == color))
    colors = Counter(guarding.guards[i].color for i in seers)
    return Verdict(False, reason, cell=(a, b), point=poly.grid.center(a, b), colors=dict(sorted(colors.items())), guards=seers)


def _r_verdict(poly: OrthoPolygon, guarding: ChromaticGuarding, mode: str) -> Verdict:
    ensure_valid(poly)
    grid = poly.grid
    masks = _masks(poly, guarding)
    counts = _color_counts(masks, guarding, grid.shape)
    total = sum(counts.values(), np.zeros(grid.shape, dtype=np.int32))
    uncovered = grid.inside & (total == 0)
    if uncovered.any():
        return _witness(poly, masks, guarding, "uncovered", uncovered)
    if mode == "cf":
        unique = np.zeros(grid.shape, dtype=bool)
        for arr in counts.values():
            unique |= arr == 1
        bad = grid.inside & ~unique
        if bad.any():
            return _witness(poly, masks, guarding, "no-unique-color", bad)
    elif mode == "strong":
        hits = [(c, grid.inside & (arr >= 2)) for c, arr in sorted(counts.items())]
        hits = [(c, bad) for c, bad in hits if bad.any()]
        if hits:
            # first cell in (a, b) order, smallest colour on ties
            first = min((tuple(np.argwhere(bad)[0]), c) for c, bad in hits)
            bad = np.zeros(grid.shape, dtype=bool)
            bad[first[0]] = True
            verdict = _witness(poly, masks, guarding, "same-color-pair", bad, color=first[1])
            return Verdict(False, verdict.reason, verdict.cell, None, verdict.point, verdict.colors, verdict.guards[:2])
    return Verdict(True)


# -----------------------------
# l-visibility on spike polygons
# -----------------------------
def _spike_for_l(poly: OrthoPolygon) -> SpikeSpec:
    spec = recognize_spike(poly)
    if spec is None:
        raise UnsupportedModelError("line-visibility verification is only defined on spike polygons")
    return spec


def special_indices(m: int) -> List[Tuple[int, int]]:
    """All (i, k) with 1 <= i <= d_m(k), in (i, k) order."""
    return sorted((i, k) for k in range(1, column_count(m) + 1) for i in range(1, depth(m, k) + 1))


def l_multisets(poly: OrthoPolygon, guarding: ChromaticGuarding) -> Tuple[SpikeSpec, Dict[Tuple[int, int], Tuple[int, ...]]]:
    """Spike parameters and, per special point (i, k), the indices of guards l-seeing it."""
    spec = _spike_for_l(poly)
    grid = poly.grid
    for idx, g in enumerate(guarding.guards):
        if not grid.covers(g.point.x, g.point.x, g.point.y, g.point.y):
            x, y = g.point.as_strings()
            raise GuardPlacementError(f"guard {idx} at ({x}, {y}) lies outside the polygon")
    seen = {}
    for i, k in special_indices(spec.m):
        p = special_point(spec.m, i, k, spec.stretched)
        seen[(i, k)] = tuple(idx for idx, g in enumerate(guarding.guards) if l_visible(g.point, p, poly))
    return spec, seen


def _l_verdict(poly: OrthoPolygon, guarding: ChromaticGuarding, mode: str) -> Verdict:
    spec, seen = l_multisets(poly, guarding)
    checks = ["uncovered"] + (["no-unique-color"] if mode == "cf" else [])
    for reason in checks:
        for (i, k), seers in seen.items():
            colors = Counter(guarding.guards[idx].color for idx in seers)
            failed = not seers if reason == "uncovered" else 1 not in colors.values()
            if failed:
                p = special_point(spec.m, i, k, spec.stretched)
                return Verdict(False, reason, special=(i, k), point=p, colors=dict(sorted(colors.items())), guards=seers)
    return Verdict(True)


# -----------------------------
# Entry points
# -----------------------------
def _dispatch(poly: OrthoPolygon, guarding: ChromaticGuarding, mode: str, model: str) -> Verdict:
    if model not in MODELS:
        raise UnsupportedModelError(f"unknown visibility model {model!r}")
    verdict = _r_verdict(poly, guarding, mode) if model == "r" else _l_verdict(poly, guarding, mode)
    logger.info("verify %s/%s: %s", mode, model, verdict.message)
    return verdict


def verify_cover(poly: OrthoPolygon, guarding: ChromaticGuarding, model: str = "r") -> Verdict:
    return _dispatch(poly, guarding, "cover", model)


def verify_strong(poly: OrthoPolygon, guarding: ChromaticGuarding) -> Verdict:
    return _dispatch(poly, guarding, "strong", "r")


def verify_cf(poly: OrthoPolygon, guarding: ChromaticGuarding, model: str = "r") -> Verdict:
    return _dispatch(poly, guarding, "cf", model)


def verify(poly: OrthoPolygon, guarding: ChromaticGuarding, mode: str, model: str = "r") -> Verdict:
    if mode == "strong" and model != "r":
        raise UnsupportedModelError("strong guardings are verified under r-visibility only")
    if mode not in ("cover", "strong", "cf"):
        raise ValueError(f"unknown verification mode {mode!r}")
    return _dispatch(poly, guarding, mode, model)
