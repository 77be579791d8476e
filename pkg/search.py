"""Exact minimum colour counts by backtracking over guard placements.

Guards sit at inside grid-cell centres; a placement is a (cell, colour)
pair. The search branches on the first cell, deepest first, that the
current placements leave unsatisfied, trying every placement that sees it.
A placement that failed as a branch is forbidden in its later siblings, so
each guard set is explored at most once. New colours are introduced in
increasing order only.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import List, Optional, Set, Tuple

import config
from chromatic import ChromaticGuarding, Guard
from errors import UnsupportedModelError
from geometry import OrthoPolygon, ensure_valid

logger = logging.getLogger(__name__)

YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass(frozen=True)
class SearchResult:
    status: str
    t: Optional[int]
    mode: str
    nodes: int
    seconds: float
    guarding: Optional[ChromaticGuarding] = None


class _OutOfBudget(Exception):
    pass


class _Search:
    def __init__(self, poly: OrthoPolygon, t: int, mode: str, deadline: float):
        grid = poly.grid
        self.cells, self.vis = grid.visibility_bits()
        self.t = t
        self.mode = mode
        self.deadline = deadline
        self.nodes = 0
        self.full = (1 << len(self.cells)) - 1
        # deepest first: grid row ascending, then left to right
        self.order = sorted(range(len(self.cells)), key=lambda i: (self.cells[i].b, self.cells[i].a))
        self.placed: List[Tuple[int, int]] = []

    def _satisfied(self, once: List[int], seen: List[int]) -> int:
        mask = 0
        for c in range(self.t):
            mask |= once[c] if self.mode == "cf" else seen[c]
        return mask

    def run(self) -> Optional[List[Tuple[int, int]]]:
        once = [0] * self.t
        many = [0] * self.t
        if self._dfs(once, many, 0, set(), 0):
            return list(self.placed)
        return None

    def _dfs(self, once: List[int], many: List[int], used: int, forbidden: Set[Tuple[int, int]], occupied: int) -> bool:
        self.nodes += 1
        if self.nodes & 0x3FF == 0 and time.monotonic() > self.deadline:
            raise _OutOfBudget
        seen = [once[c] | many[c] for c in range(self.t)]
        done = self._satisfied(once, seen)
        if done == self.full:
            return True
        target = next(i for i in self.order if not (done >> i) & 1)

        candidates = []
        for x in self.order:
            if not (self.vis[target] >> x) & 1:
                continue
            for c in range(min(used + 1, self.t)):
                if (x, c) in forbidden or (x, c) in self.placed:
                    continue
                if self.mode == "strong" and ((occupied >> x) & 1 or seen[c] & self.vis[x]):
                    continue
                candidates.append((x, c))
        if not candidates:
            return False

        tried: Set[Tuple[int, int]] = set()
        for x, c in candidates:
            v = self.vis[x]
            new_once, new_many = list(once), list(many)
            new_once[c] = (once[c] & ~v) | (v & ~once[c] & ~many[c])
            new_many[c] = many[c] | (once[c] & v)
            self.placed.append((x, c))
            if self._dfs(new_once, new_many, max(used, c + 1), forbidden | tried, occupied | (1 << x)):
                return True
            self.placed.pop()
            tried.add((x, c))
        return False


def _check(mode: str, model: str) -> None:
    if model != "r":
        raise UnsupportedModelError("exhaustive search is only implemented for r-visibility")
    if mode not in ("strong", "cf"):
        raise ValueError(f"unknown search mode {mode!r}")


def exists_guarding(poly: OrthoPolygon, t: int, mode: str = "cf", model: str = "r", budget: Optional[float] = None, deadline: Optional[float] = None) -> SearchResult:
    _check(mode, model)
    ensure_valid(poly)
    start = time.monotonic()
    if deadline is None:
        deadline = start + (config.SEARCH_BUDGET_SECONDS if budget is None else budget)
    search = _Search(poly, t, mode, deadline)
    try:
        found = search.run()
    except _OutOfBudget:
        logger.info("search t=%d %s: budget exhausted after %d node(s)", t, mode, search.nodes)
        return SearchResult(UNKNOWN, t, mode, search.nodes, time.monotonic() - start)
    elapsed = time.monotonic() - start
    logger.info("search t=%d %s: %s after %d node(s)", t, mode, YES if found is not None else NO, search.nodes)
    if found is None:
        return SearchResult(NO, t, mode, search.nodes, elapsed)
    guards = tuple(Guard(search.cells[x].point, c + 1) for x, c in sorted(found, key=lambda p: (p[1], p[0])))
    return SearchResult(YES, t, mode, search.nodes, elapsed, ChromaticGuarding(guards, "r"))


def min_colors(poly: OrthoPolygon, mode: str = "cf", model: str = "r", budget: Optional[float] = None, max_t: int = 8) -> SearchResult:
    """Smallest t with a guarding; ``status`` is "unknown" when a level ran out of time
    and "no" when even ``max_t`` colours were refuted."""
    _check(mode, model)
    start = time.monotonic()
    deadline = start + (config.SEARCH_BUDGET_SECONDS if budget is None else budget)
    nodes = 0
    for t in range(1, max_t + 1):
        result = exists_guarding(poly, t, mode, model, deadline=deadline)
        nodes += result.nodes
        if result.status != NO:
            return SearchResult(result.status, t, mode, nodes, time.monotonic() - start, result.guarding)
    return SearchResult(NO, max_t, mode, nodes, time.monotonic() - start)
