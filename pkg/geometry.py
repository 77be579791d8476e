"""Exact simple orthogonal polygons and the two point visibility predicates.

Coordinates are ``fractions.Fraction`` over unbounded integers. Polygon
vertices are integral; derived points (cell centres, special points) may
carry a denominator of 2.
"""
from __future__ import annotations

import bisect
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, List, Sequence, Tuple, Union

from errors import InvalidPolygonError, OutsideError

logger = logging.getLogger(__name__)

Coord = Fraction
CoordLike = Union[int, str, Fraction]


# -----------------------------
# Coordinates and points
# -----------------------------
def coord(value: CoordLike) -> Fraction:
    """Parse an exact coordinate: int, Fraction, or a "num" / "num/den" string."""
    if isinstance(value, bool):
        raise ValueError("booleans are not coordinates")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE_ "):
            raise ValueError(f"not an exact coordinate: {value!r}")
        num, _, den = text.partition("/")
        if den and int(den) <= 0:
            raise ValueError(f"denominator must be positive: {value!r}")
        return Fraction(int(num), int(den) if den else 1)
    raise ValueError(f"unsupported coordinate type {type(value).__name__}")


def format_coord(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", coord(self.x))
        object.__setattr__(self, "y", coord(self.y))

    @classmethod
    def of(cls, x: CoordLike, y: CoordLike) -> "Point":
        return cls(coord(x), coord(y))

    def as_strings(self) -> Tuple[str, str]:
        return format_coord(self.x), format_coord(self.y)


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


# -----------------------------
# Polygon
# -----------------------------
@dataclass(frozen=True)
class OrthoPolygon:
    """Counterclockwise vertex list of a simple orthogonal polygon."""

    vertices: Tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[CoordLike]]) -> "OrthoPolygon":
        return cls(tuple(Point.of(x, y) for x, y in pairs))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> Tuple[Point, Point]:
        return self.vertices[i], self.vertices[(i + 1) % self.n]

    def edges(self) -> List[Tuple[Point, Point]]:
        return [self.edge(i) for i in range(self.n)]

    @cached_property
    def grid(self):
        # imported here: cells depends on this module for its types
        from cells import build_grid

        return build_grid(self)

    def to_pairs(self) -> List[Tuple[str, str]]:
        return [v.as_strings() for v in self.vertices]


def signed_area(poly: OrthoPolygon) -> Fraction:
    total = Fraction(0)
    for a, b in poly.edges():
        total += a.x * b.y - b.x * a.y
    return total / 2


# -----------------------------
# Validation
# -----------------------------
class ViolationKind(str, Enum):
    NON_ORTHOGONAL = "non-orthogonal"
    NON_SIMPLE = "non-simple"
    NOT_CCW = "not-ccw"
    NON_INTEGER = "non-integer"
    GENERAL_POSITION = "general-position"


@dataclass(frozen=True)
class PolygonViolation:
    kind: ViolationKind
    message: str
    vertices: Tuple[int, ...] = ()
    edges: Tuple[int, ...] = ()


@dataclass
class ValidationReport:
    violations: List[PolygonViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def structurally_ok(self) -> bool:
        return all(v.kind == ViolationKind.GENERAL_POSITION for v in self.violations)

    def add(self, kind: ViolationKind, message: str, vertices=(), edges=()) -> None:
        self.violations.append(PolygonViolation(kind, message, tuple(vertices), tuple(edges)))


def _check_edges(poly: OrthoPolygon, report: ValidationReport) -> None:
    n = poly.n
    for i, v in enumerate(poly.vertices):
        if v.x.denominator != 1 or v.y.denominator != 1:
            report.add(ViolationKind.NON_INTEGER, f"vertex {i} has a non-integral coordinate", vertices=[i])
    if n < 4 or n % 2:
        report.add(ViolationKind.NON_ORTHOGONAL, f"vertex count {n} is not an even number >= 4")
    for i, (a, b) in enumerate(poly.edges()):
        if a == b:
            report.add(ViolationKind.NON_SIMPLE, f"edge {i} is degenerate (repeated vertex)", vertices=[i, (i + 1) % n], edges=[i])
        elif a.x != b.x and a.y != b.y:
            report.add(ViolationKind.NON_ORTHOGONAL, f"edge {i} is neither horizontal nor vertical", edges=[i])
    if report.violations:
        return
    for i in range(n):
        a, b = poly.edge(i)
        _, c = poly.edge((i + 1) % n)
        if (a.y == b.y) == (b.y == c.y):
            report.add(
                ViolationKind.NON_ORTHOGONAL,
                f"edges {i} and {(i + 1) % n} do not alternate horizontal/vertical",
                vertices=[(i + 1) % n],
                edges=[i, (i + 1) % n],
            )


def _check_simple(poly: OrthoPolygon, report: ValidationReport) -> None:
    # Every crossing or touching of two axis-parallel edges happens at a vertex
    # of the coordinate grid. On a simple boundary each grid vertex is either a
    # polygon vertex with exactly two incident edge ends, or lies inside at
    # most one edge.
    xs = sorted({v.x for v in poly.vertices})
    ys = sorted({v.y for v in poly.vertices})
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: j for j, y in enumerate(ys)}
    ends = defaultdict(list)
    inner = defaultdict(list)
    for e, (a, b) in enumerate(poly.edges()):
        ia, ja, ib, jb = xi[a.x], yi[a.y], xi[b.x], yi[b.y]
        ends[(ia, ja)].append(e)
        ends[(ib, jb)].append(e)
        if ja == jb:
            for i in range(min(ia, ib) + 1, max(ia, ib)):
                inner[(i, ja)].append(e)
        else:
            for j in range(min(ja, jb) + 1, max(ja, jb)):
                inner[(ia, j)].append(e)
    for key in sorted(set(ends) | set(inner)):
        e_end, e_in = ends.get(key, []), inner.get(key, [])
        if (len(e_end) == 2 and not e_in) or (not e_end and len(e_in) <= 1):
            continue
        where = Point(xs[key[0]], ys[key[1]])
        report.add(
            ViolationKind.NON_SIMPLE,
            f"boundary touches itself at ({format_coord(where.x)}, {format_coord(where.y)})",
            vertices=[i for i, v in enumerate(poly.vertices) if v == where],
            edges=sorted(set(e_end) | set(e_in)),
        )


def _interior_rays(poly: OrthoPolygon, i: int) -> List[Tuple[int, int]]:
    prev, here, nxt = poly.vertices[i - 1], poly.vertices[i], poly.vertices[(i + 1) % poly.n]
    d_in = (_sign(here.x - prev.x), _sign(here.y - prev.y))
    d_out = (_sign(nxt.x - here.x), _sign(nxt.y - here.y))
    return [d_in, (-d_out[0], -d_out[1])]


def _check_general_position(poly: OrthoPolygon, report: ValidationReport) -> None:
    grid = poly.grid
    reflex = classify_vertices(poly).reflex_indices
    for axis in ("h", "v"):
        lines = defaultdict(list)
        for i in reflex:
            v = poly.vertices[i]
            lines[v.y if axis == "h" else v.x].append(i)
        for level, members in lines.items():
            members.sort(key=lambda i: poly.vertices[i].x if axis == "h" else poly.vertices[i].y)
            for i, j in zip(members, members[1:]):
                p, q = poly.vertices[i], poly.vertices[j]
                if axis == "h":
                    inside = grid.chord_interior("h", level, p.x, q.x)
                else:
                    inside = grid.chord_interior("v", level, p.y, q.y)
                if not inside:
                    continue
                directions = set(_interior_rays(poly, i)) | set(_interior_rays(poly, j))
                if len(directions) != 3:
                    report.add(
                        ViolationKind.GENERAL_POSITION,
                        f"reflex vertices {i} and {j} joined by an interior chord span {len(directions)} directions",
                        vertices=[i, j],
                    )


def validate(poly: OrthoPolygon) -> ValidationReport:
    report = ValidationReport()
    if not poly.vertices:
        report.add(ViolationKind.NON_ORTHOGONAL, "polygon has no vertices")
        return report
    _check_edges(poly, report)
    if report.violations:
        return report
    _check_simple(poly, report)
    if report.violations:
        return report
    if signed_area(poly) <= 0:
        report.add(ViolationKind.NOT_CCW, "vertices are not in counterclockwise order")
        return report
    _check_general_position(poly, report)
    return report


def ensure_valid(poly: OrthoPolygon, general_position: bool = False) -> OrthoPolygon:
    report = validate(poly)
    if not (report.ok if general_position else report.structurally_ok):
        raise InvalidPolygonError(report)
    if not report.ok:
        logger.info("polygon violates general position at %d chord(s)", len(report.violations))
    return poly


# -----------------------------
# Vertex classes
# -----------------------------
class VertexKind(str, Enum):
    CONVEX = "convex"
    REFLEX = "reflex"


@dataclass(frozen=True)
class VertexClass:
    labels: Tuple[VertexKind, ...]

    @property
    def reflex_indices(self) -> List[int]:
        return [i for i, k in enumerate(self.labels) if k == VertexKind.REFLEX]

    @property
    def convex_count(self) -> int:
        return sum(1 for k in self.labels if k == VertexKind.CONVEX)


def classify_vertices(poly: OrthoPolygon) -> VertexClass:
    labels = []
    for i, here in enumerate(poly.vertices):
        prev, nxt = poly.vertices[i - 1], poly.vertices[(i + 1) % poly.n]
        cross = (here.x - prev.x) * (nxt.y - here.y) - (here.y - prev.y) * (nxt.x - here.x)
        labels.append(VertexKind.CONVEX if cross > 0 else VertexKind.REFLEX)
    return VertexClass(tuple(labels))


# -----------------------------
# Point location and visibility
# -----------------------------
class Location(str, Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def point_location(p: Point, poly: OrthoPolygon) -> Location:
    crossings = 0
    for a, b in poly.edges():
        lo_x, hi_x = min(a.x, b.x), max(a.x, b.x)
        lo_y, hi_y = min(a.y, b.y), max(a.y, b.y)
        if lo_x <= p.x <= hi_x and lo_y <= p.y <= hi_y:
            return Location.BOUNDARY
        # rightward ray; vertical edges counted on the half-open span [lo_y, hi_y)
        if a.x == b.x and a.x > p.x and lo_y <= p.y < hi_y:
            crossings += 1
    return Location.INSIDE if crossings % 2 else Location.OUTSIDE


def _require_in_polygon(poly: OrthoPolygon, *points: Point) -> None:
    grid = poly.grid
    for p in points:
        if not grid.covers(p.x, p.x, p.y, p.y):
            raise OutsideError(f"point ({format_coord(p.x)}, {format_coord(p.y)}) lies outside the polygon")


def r_visible(p: Point, q: Point, poly: OrthoPolygon) -> bool:
    """True iff the closed axis-parallel rectangle spanned by p and q lies in P."""
    _require_in_polygon(poly, p, q)
    return poly.grid.covers(min(p.x, q.x), max(p.x, q.x), min(p.y, q.y), max(p.y, q.y))


def _crossings(cuts: Sequence[Fraction], start: Fraction, delta: Fraction) -> List[Fraction]:
    if delta == 0:
        return []
    lo, hi = sorted((start, start + delta))
    inner = cuts[bisect.bisect_right(cuts, lo):bisect.bisect_left(cuts, hi)]
    return [(c - start) / delta for c in inner]


def l_visible(p: Point, q: Point, poly: OrthoPolygon) -> bool:
    """True iff the closed segment pq lies in the closed polygon.

    Membership is constant on every open piece of the segment between two
    consecutive grid-line crossings, so one midpoint per piece decides it.
    """
    _require_in_polygon(poly, p, q)
    grid = poly.grid
    dx, dy = q.x - p.x, q.y - p.y
    ts = sorted({Fraction(0), Fraction(1), *_crossings(grid.xcuts, p.x, dx), *_crossings(grid.ycuts, p.y, dy)})
    for t0, t1 in zip(ts, ts[1:]):
        t = (t0 + t1) / 2
        x, y = p.x + t * dx, p.y + t * dy
        if not grid.covers(x, x, y, y):
            return False
    return True
