from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, field_validator

from chromatic import ChromaticGuarding, Guard
from geometry import OrthoPolygon, Point, ValidationReport, coord, format_coord

CoordIn = Union[int, str]


def _parse(value):
    try:
        return coord(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(str(exc)) from exc


def _pair(p: Point) -> Tuple[str, str]:
    return format_coord(p.x), format_coord(p.y)


# -----------------------------
# Polygons
# -----------------------------
class PolygonIn(BaseModel):
    vertices: List[Tuple[CoordIn, CoordIn]] = Field(min_length=1)

    @field_validator("vertices")
    @classmethod
    def exact_coordinates(cls, v):
        for x, y in v:
            _parse(x)
            _parse(y)
        return v

    def to_polygon(self) -> OrthoPolygon:
        return OrthoPolygon.from_pairs(self.vertices)

    @classmethod
    def from_polygon(cls, poly: OrthoPolygon) -> "PolygonIn":
        return cls(vertices=[_pair(v) for v in poly.vertices])


class ViolationOut(BaseModel):
    kind: str
    message: str
    vertices: List[int] = []
    edges: List[int] = []


class ValidationOut(BaseModel):
    ok: bool
    violations: List[ViolationOut] = []
    reflex: int = 0
    convex: int = 0

    @classmethod
    def from_report(cls, report: ValidationReport, reflex: int = 0, convex: int = 0) -> "ValidationOut":
        return cls(
            ok=report.ok,
            violations=[
                ViolationOut(kind=v.kind.value, message=v.message, vertices=list(v.vertices), edges=list(v.edges))
                for v in report.violations
            ],
            reflex=reflex,
            convex=convex,
        )


class CellsOut(BaseModel):
    xcuts: List[str]
    ycuts: List[str]
    inside_cells: int
    classes: int


# -----------------------------
# Guardings
# -----------------------------
class GuardIn(BaseModel):
    x: CoordIn
    y: CoordIn
    color: int = Field(ge=1)
    group: Optional[int] = None
    local: Optional[int] = None

    @field_validator("x", "y")
    @classmethod
    def exact_coordinate(cls, v):
        _parse(v)
        return v


class GuardingIn(BaseModel):
    model: Literal["r", "l"] = "r"
    t: Optional[int] = Field(default=None, ge=0)
    guards: List[GuardIn]

    def to_guarding(self) -> ChromaticGuarding:
        return ChromaticGuarding(
            tuple(Guard(Point(_parse(g.x), _parse(g.y)), g.color, g.group, g.local) for g in self.guards),
            self.model,
        )

    @classmethod
    def from_guarding(cls, guarding: ChromaticGuarding) -> "GuardingIn":
        guards = []
        for g in guarding.guards:
            x, y = _pair(g.point)
            guards.append(GuardIn(x=x, y=y, color=g.color, group=g.group, local=g.local))
        return cls(model=guarding.model, t=guarding.t, guards=guards)


class VerdictOut(BaseModel):
    ok: bool
    reason: Optional[str] = None
    cell: Optional[Tuple[int, int]] = None
    special: Optional[Tuple[int, int]] = None
    point: Optional[Tuple[str, str]] = None
    colors: Dict[str, int] = {}
    guards: List[int] = []
    message: str

    @classmethod
    def from_verdict(cls, verdict) -> "VerdictOut":
        return cls(
            ok=verdict.ok,
            reason=verdict.reason,
            cell=verdict.cell,
            special=verdict.special,
            point=_pair(verdict.point) if verdict.point is not None else None,
            colors={str(c): n for c, n in verdict.colors.items()},
            guards=list(verdict.guards),
            message=verdict.message,
        )


# -----------------------------
# Trees
# -----------------------------
class WindowOut(BaseModel):
    segment: List[Tuple[str, str]]
    side: Literal["L", "R"]


class VisNodeOut(BaseModel):
    id: int
    parent: Optional[int]
    side: Literal["L", "R"]
    depth: int
    group: int
    vertices: List[Tuple[str, str]]
    base: List[Tuple[str, str]]
    windows: List[WindowOut] = []


class VisTreeOut(BaseModel):
    root_edge: int
    nodes: List[VisNodeOut]

    @classmethod
    def from_tree(cls, tree) -> "VisTreeOut":
        return cls(
            root_edge=tree.root_edge,
            nodes=[
                VisNodeOut(
                    id=n.id,
                    parent=n.parent,
                    side=n.side,
                    depth=n.depth,
                    group=n.group,
                    vertices=[_pair(v) for v in n.wvp.subpolygon.vertices],
                    base=[_pair(p) for p in n.wvp.base],
                    windows=[WindowOut(segment=[_pair(p) for p in w.segment], side=w.side) for w in n.wvp.windows],
                )
                for n in tree.nodes
            ],
        )


class PyramidOut(BaseModel):
    id: int
    parent: Optional[int]
    depth: int
    stage: int
    vertices: List[Tuple[str, str]]
    guard: Tuple[str, str]


class GuardTreeOut(BaseModel):
    node: int
    height: int
    rounds: int
    root: int
    pyramids: List[PyramidOut]


class DecomposeOut(BaseModel):
    trees: List[GuardTreeOut]

    @classmethod
    def from_forest(cls, forest) -> "DecomposeOut":
        from cells import trace_outline

        trees = []
        for node, tree in forest.trees:
            grid = node.wvp.grid
            trees.append(
                GuardTreeOut(
                    node=node.id,
                    height=tree.height,
                    rounds=tree.rounds,
                    root=tree.root,
                    pyramids=[
                        PyramidOut(
                            id=g.id,
                            parent=g.parent,
                            depth=g.depth,
                            stage=g.stage,
                            vertices=[_pair(v) for v in trace_outline(g.pyramid.cells(), grid.xcuts, grid.ycuts).vertices],
                            guard=_pair(g.guard),
                        )
                        for g in tree.nodes
                    ],
                )
            )
        return cls(trees=trees)


# -----------------------------
# Tableaux
# -----------------------------
class TableauIn(BaseModel):
    m: int = Field(ge=1)
    mprime: int = Field(ge=1)
    t: int = Field(ge=1)
    columns: List[List[Dict[str, int]]]

    @field_validator("columns")
    @classmethod
    def decimal_color_keys(cls, v):
        for col in v:
            for entry in col:
                for key, count in entry.items():
                    if not key.isdigit() or int(key) < 1:
                        raise ValueError(f"color key {key!r} is not a positive decimal integer")
                    if count < 1:
                        raise ValueError(f"multiplicity {count} for color {key} must be positive")
        return v

    def to_tableau(self):
        from tableau import MulticolorTableau

        return MulticolorTableau.from_counts(
            self.m, self.mprime, self.t, [[{int(c): n for c, n in e.items()} for e in col] for col in self.columns]
        )

    @classmethod
    def from_tableau(cls, T) -> "TableauIn":
        return cls(
            m=T.m,
            mprime=T.mprime,
            t=T.t,
            columns=[[{str(c): n for c, n in e.items} for e in col] for col in T.columns],
        )


class TableauViolationOut(BaseModel):
    property: int
    i: int
    k: int
    color: Optional[int] = None
    condition: Optional[str] = None
    rule: str = "conform"
    detail: List[Tuple[str, Optional[int], Optional[str]]] = []
    message: str


class ConformOut(BaseModel):
    ok: bool
    violation: Optional[TableauViolationOut] = None

    @classmethod
    def from_result(cls, result) -> "ConformOut":
        return cls(ok=result.ok, violation=_violation_out(result.violation))


def _violation_out(v) -> Optional[TableauViolationOut]:
    if v is None:
        return None
    return TableauViolationOut(
        property=v.property, i=v.i, k=v.k, color=v.color, condition=v.condition,
        rule=v.rule, detail=list(v.detail), message=v.message,
    )


class StageOut(BaseModel):
    stage: int
    columns: int
    center: int
    excluded: List[int]
    color: Optional[int] = None
    xy: Optional[str] = None
    subblock_centers: List[int] = []
    case: Optional[int] = None
    chosen: Optional[int] = None
    odd_choices: Dict[str, int] = {}
    outcome: str
    note: str = ""
    claims: List[Tuple[str, bool]] = []


class TraceOut(BaseModel):
    t: int
    target_m: int
    outcome: str
    stages: List[StageOut] = []
    violation: Optional[TableauViolationOut] = None
    reduced: Optional[TableauIn] = None
    reduced_conform: Optional[bool] = None
    replay_ok: Optional[bool] = None
    model: Literal["r", "l"] = "l"

    @classmethod
    def from_trace(cls, trace, replay_ok: Optional[bool] = None) -> "TraceOut":
        return cls(
            t=trace.t,
            target_m=trace.target_m,
            outcome=trace.outcome,
            stages=[
                StageOut(
                    stage=s.stage, columns=s.columns, center=s.center, excluded=list(s.excluded), color=s.color,
                    xy=s.xy, subblock_centers=list(s.subblock_centers), case=s.case, chosen=s.chosen,
                    odd_choices={str(k): j for k, j in s.odd_choices}, outcome=s.outcome, note=s.note,
                    claims=[(c.text, c.holds) for c in s.claims],
                )
                for s in trace.stages
            ],
            violation=_violation_out(trace.violation),
            reduced=TableauIn.from_tableau(trace.reduced) if trace.reduced is not None else None,
            reduced_conform=trace.reduced_conform,
            replay_ok=replay_ok,
            model=trace.model,
        )


# -----------------------------
# Search and requests
# -----------------------------
class SearchOut(BaseModel):
    status: Literal["yes", "no", "unknown"]
    t: Optional[int]
    mode: str
    nodes: int
    seconds: float
    guarding: Optional[GuardingIn] = None

    @classmethod
    def from_result(cls, result) -> "SearchOut":
        return cls(
            status=result.status,
            t=result.t,
            mode=result.mode,
            nodes=result.nodes,
            seconds=round(result.seconds, 3),
            guarding=GuardingIn.from_guarding(result.guarding) if result.guarding is not None else None,
        )


class PolygonGuardingIn(BaseModel):
    polygon: PolygonIn
    guarding: GuardingIn


class ExtractIn(BaseModel):
    m: int = Field(ge=1)
    guarding: GuardingIn


class MinColorsIn(BaseModel):
    polygon: PolygonIn
    mode: Literal["strong", "cf"] = "cf"
    max_t: int = Field(default=4, ge=1)
    budget: Optional[float] = Field(default=None, gt=0)


class RenderIn(BaseModel):
    polygon: PolygonIn
    guarding: Optional[GuardingIn] = None
    scale: Optional[float] = Field(default=None, gt=0)
    show_cells: bool = False
    squash_rows: bool = False
