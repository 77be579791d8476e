"""Multicolor tableaux of spike guardings.

Entry ``M(i, k)`` is the colour multiset of the guards that see cell
R_{i,k} (r-visibility) or special point p_{i,k} (line visibility). Column
k of an m-row tableau holds d_m(k) = m - pi2(k) entries; a tableau with
``mprime`` has 2^mprime - 1 columns.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from chromatic import ChromaticGuarding
from errors import IndexRangeError, TableauError, UncoveredError
from spikes import (
    HALVES,
    QUARTERS,
    block,
    cell_index,
    column_count,
    gen_spike,
    half_block,
    lb_size,
    left_center,
    pi2,
    quarter_block,
    right_center,
)
from verify import l_multisets, r_multisets

logger = logging.getLogger(__name__)


# -----------------------------
# Multisets and tableaux
# -----------------------------
@dataclass(frozen=True)
class ColorMultiset:
    items: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def of(cls, counts: Mapping[int, int]) -> "ColorMultiset":
        for c, n in counts.items():
            if n < 0:
                raise TableauError(f"negative multiplicity {n} for color {c}")
        return cls(tuple(sorted((int(c), int(n)) for c, n in counts.items() if n > 0)))

    def count(self, color: int) -> int:
        return dict(self.items).get(color, 0)

    def __contains__(self, color: int) -> bool:
        return self.count(color) > 0

    @property
    def colors(self) -> frozenset:
        return frozenset(c for c, _ in self.items)

    @property
    def unique(self) -> frozenset:
        return frozenset(c for c, n in self.items if n == 1)

    def issubset(self, other: "ColorMultiset") -> bool:
        return all(n <= other.count(c) for c, n in self.items)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.items)


@dataclass(frozen=True)
class MulticolorTableau:
    m: int
    mprime: int
    t: int
    columns: Tuple[Tuple[ColorMultiset, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(tuple(col) for col in self.columns))
        if not 1 <= self.mprime <= self.m:
            raise TableauError(f"need 1 <= mprime <= m, got mprime={self.mprime}, m={self.m}")
        if len(self.columns) != column_count(self.mprime):
            raise TableauError(f"expected {column_count(self.mprime)} columns, got {len(self.columns)}")
        for k, col in enumerate(self.columns, start=1):
            if len(col) != self.d(k):
                raise TableauError(f"column {k} must have {self.d(k)} entries, got {len(col)}")
            for entry in col:
                for c in entry.colors:
                    if not 1 <= c <= self.t:
                        raise TableauError(f"color {c} in column {k} outside [1, {self.t}]")

    @classmethod
    def from_counts(cls, m: int, mprime: int, t: int, columns: Iterable[Iterable[Mapping[int, int]]]) -> "MulticolorTableau":
        return cls(m, mprime, t, tuple(tuple(ColorMultiset.of(e) for e in col) for col in columns))

    @property
    def n_columns(self) -> int:
        return len(self.columns)

    def d(self, k: int) -> int:
        return self.m - pi2(k)

    def M(self, i: int, k: int) -> ColorMultiset:
        if not 1 <= k <= self.n_columns:
            raise TableauError(f"column {k} outside [1, {self.n_columns}]")
        if not 1 <= i <= self.d(k):
            raise TableauError(f"row {i} outside [1, {self.d(k)}] in column {k}")
        return self.columns[k - 1][i - 1]

    def U(self, i: int, k: int) -> frozenset:
        return self.M(i, k).unique


# -----------------------------
# Extraction
# -----------------------------
def extract_r(m: int, guarding: ChromaticGuarding) -> MulticolorTableau:
    poly = gen_spike(m)
    seen = r_multisets(poly, guarding)
    columns = []
    for k in range(1, column_count(m) + 1):
        col = []
        for i in range(1, m - pi2(k) + 1):
            counts = seen[cell_index(m, i, k)]
            if not counts:
                raise UncoveredError((i, k), "cell R_{i,k} is seen by no guard")
            col.append(ColorMultiset.of(counts))
        columns.append(col)
    return MulticolorTableau(m, m, max(guarding.t, 1), tuple(tuple(c) for c in columns))


def extract_l(m: int, guarding: ChromaticGuarding) -> MulticolorTableau:
    poly = gen_spike(m, stretched=True)
    _, seen = l_multisets(poly, guarding)
    columns = []
    for k in range(1, column_count(m) + 1):
        col = []
        for i in range(1, m - pi2(k) + 1):
            seers = seen[(i, k)]
            if not seers:
                raise UncoveredError((i, k), "special point p_{i,k} is seen by no guard")
            col.append(ColorMultiset.of(Counter(guarding.guards[g].color for g in seers)))
        columns.append(col)
    return MulticolorTableau(m, m, max(guarding.t, 1), tuple(tuple(c) for c in columns))


# -----------------------------
# Conformity
# -----------------------------
@dataclass(frozen=True)
class Violation:
    property: int
    i: int
    k: int
    color: Optional[int] = None
    condition: Optional[str] = None
    detail: Tuple[Tuple[str, Optional[int], Optional[str]], ...] = ()
    rule: str = "conform"

    @property
    def message(self) -> str:
        text = f"property {self.property} fails at i={self.i}, k={self.k}"
        if self.color is not None:
            text += f", color {self.color}"
        if self.condition:
            text += f", condition ({self.condition})"
        return text


@dataclass(frozen=True)
class ConformResult:
    ok: bool
    violation: Optional[Violation] = None


def _row(T: MulticolorTableau, i: int, j: int) -> ColorMultiset:
    if i > T.d(j):
        raise TableauError(f"row {i} missing in column {j} (depth {T.d(j)}); block arithmetic broken")
    return T.M(i, j)


def q_condition(T: MulticolorTableau, c: int, i: int, k: int, j: int) -> Optional[str]:
    """First failing condition of Q(c, k, j) evaluated at row i, or None when Q holds."""
    if c not in T.M(i, j):
        return "a"
    dk = T.d(k)
    if c in T.U(i, j):
        if c in _row(T, dk + 2, j):
            return "b"
    elif not any(all(c not in _row(T, dk, jj).unique for jj in half_block(j, z)) for z in HALVES):
        return "c"
    return None


def quarter_witness(T: MulticolorTableau, c: int, i: int, k: int) -> Tuple[Optional[str], Tuple]:
    """First XY with Q(c, k, j) for all j in B_XY(k), plus the per-XY first failures."""
    detail = []
    for xy in QUARTERS:
        failure = next(((j, cond) for j in quarter_block(k, xy) for cond in [q_condition(T, c, i, k, j)] if cond), None)
        if failure is None:
            return xy, tuple(detail)
        detail.append((xy, failure[0], failure[1]))
    return None, tuple(detail)


def _check_color_range(T: MulticolorTableau, t: int) -> None:
    for k, col in enumerate(T.columns, start=1):
        for entry in col:
            if any(c > t for c in entry.colors):
                raise TableauError(f"column {k} uses a color above t={t}")


def check_conform(T: MulticolorTableau, t: int) -> ConformResult:
    _check_color_range(T, t)
    base = check_conform_12(T)
    if not base.ok:
        return base
    for i in range(1, T.m + 1):
        for k in range(1, T.n_columns + 1):
            if i > T.d(k):
                continue
            for c in sorted(T.U(i, k)):
                xy, detail = quarter_witness(T, c, i, k)
                if xy is None:
                    return ConformResult(False, Violation(3, i, k, c, detail[0][2], detail))
    return ConformResult(True)


def _lr_condition(T: MulticolorTableau, c: int, k: int, j: int) -> Optional[str]:
    if c not in T.M(1, j):
        return "a"
    if c in T.U(1, j):
        if c in _row(T, T.d(k) + 1, j):
            return "b"
    elif any(c in T.U(1, jj) for jj in block(j)):
        return "c"
    return None


def half_witness(T: MulticolorTableau, c: int, k: int) -> Tuple[Optional[str], Tuple]:
    """First side Z with the left-right conditions for all j in B_Z(k), plus the per-side first failures."""
    detail = []
    for z in HALVES:
        failure = next(((j, cond) for j in half_block(k, z) for cond in [_lr_condition(T, c, k, j)] if cond), None)
        if failure is None:
            return z, tuple(detail)
        detail.append((z, failure[0], failure[1]))
    return None, tuple(detail)


def check_left_right(T: MulticolorTableau) -> ConformResult:
    """Properties 1 and 2 plus the half-block rule that r-guardings satisfy in the top row."""
    base = check_conform_12(T)
    if not base.ok:
        return base
    for k in range(1, T.n_columns + 1):
        for c in sorted(T.U(1, k)):
            side, detail = half_witness(T, c, k)
            if side is None:
                return ConformResult(False, Violation(3, 1, k, c, detail[0][2], detail, rule="left-right"))
    return ConformResult(True)


def check_conform_12(T: MulticolorTableau) -> ConformResult:
    """Uniqueness in every entry and monotone columns."""
    for i in range(1, T.m + 1):
        for k in range(1, T.n_columns + 1):
            if i <= T.d(k) and not T.U(i, k):
                return ConformResult(False, Violation(1, i, k))
    for i in range(1, T.m + 1):
        for k in range(1, T.n_columns + 1):
            if i < T.d(k) and not T.M(i + 1, k).issubset(T.M(i, k)):
                lower, upper = T.M(i + 1, k), T.M(i, k)
                extra = min(c for c in lower.colors if lower.count(c) > upper.count(c))
                return ConformResult(False, Violation(2, i, k, extra))
    return ConformResult(True)


# -----------------------------
# Conformity-preserving operations
# -----------------------------
def op_restrict_block(T: MulticolorTableau, k: int) -> MulticolorTableau:
    if not 1 <= k <= T.n_columns:
        raise IndexRangeError(f"column {k} outside [1, {T.n_columns}]")
    cols = block(k)
    return MulticolorTableau(T.m, pi2(k) + 1, T.t, tuple(T.columns[j - 1] for j in cols))


def op_delete_top_rows(T: MulticolorTableau, m_new: int) -> MulticolorTableau:
    if not T.mprime <= m_new <= T.m:
        raise TableauError(f"cannot shrink to {m_new} rows: need {T.mprime} <= m_new <= {T.m}")
    drop = T.m - m_new
    return MulticolorTableau(m_new, T.mprime, T.t, tuple(col[drop:] for col in T.columns))


def op_select_columns(T: MulticolorTableau, m_star: int, odd_choices: Optional[Mapping[int, int]] = None) -> MulticolorTableau:
    """Keep column k*f for even k and a truncated column from ((k-1)f, (k+1)f) for odd k, f = 2^(mprime - m*)."""
    if not 1 <= m_star <= T.mprime:
        raise IndexRangeError(f"m* must lie in [1, {T.mprime}], got {m_star}")
    odd_choices = dict(odd_choices or {})
    f = 1 << (T.mprime - m_star)
    m_new = T.m - T.mprime + m_star
    columns = []
    for k in range(1, column_count(m_star) + 1):
        if k % 2 == 0:
            columns.append(T.columns[k * f - 1])
            continue
        j = odd_choices.get(k, k * f)
        if not (k - 1) * f < j < (k + 1) * f:
            raise IndexRangeError(f"choice {j} for odd column {k} outside ({(k - 1) * f}, {(k + 1) * f})")
        columns.append(T.columns[j - 1][:m_new])
    unknown = set(odd_choices) - set(range(1, column_count(m_star) + 1, 2))
    if unknown:
        raise IndexRangeError(f"choices given for non-odd or missing columns {sorted(unknown)}")
    return MulticolorTableau(m_new, m_star, T.t, tuple(columns))


def relabel_colors(T: MulticolorTableau, mapping: Mapping[int, int], t: Optional[int] = None) -> MulticolorTableau:
    columns = []
    for col in T.columns:
        new_col = []
        for entry in col:
            counts: Counter = Counter()
            for c, n in entry.items:
                counts[mapping.get(c, c)] += n
            new_col.append(ColorMultiset.of(counts))
        columns.append(tuple(new_col))
    return MulticolorTableau(T.m, T.mprime, T.t if t is None else t, tuple(columns))


# -----------------------------
# Staged reduction
# -----------------------------
VIOLATION = "violation"
CASE1_REDUCED = "case1-reduced"
CASE2_DESCEND = "case2-descend"
TERMINAL = "terminal"

MODELS = ("r", "l")


@dataclass(frozen=True)
class Claim:
    text: str
    holds: bool


@dataclass(frozen=True)
class StageRecord:
    stage: int
    columns: int
    center: int
    excluded: Tuple[int, ...]
    color: Optional[int] = None
    xy: Optional[str] = None
    subblock_centers: Tuple[int, ...] = ()
    case: Optional[int] = None
    chosen: Optional[int] = None
    odd_choices: Tuple[Tuple[int, int], ...] = ()
    outcome: str = CASE2_DESCEND
    note: str = ""
    claims: Tuple[Claim, ...] = ()


@dataclass(frozen=True)
class ReductionTrace:
    t: int
    target_m: int
    outcome: str
    stages: Tuple[StageRecord, ...] = ()
    violation: Optional[Violation] = None
    reduced: Optional[MulticolorTableau] = field(default=None, repr=False)
    reduced_conform: Optional[bool] = None
    model: str = "l"


def _check_model(model: str) -> None:
    if model not in MODELS:
        raise ValueError(f"unknown visibility model {model!r}")


def _conform(T: MulticolorTableau, t: int, model: str) -> ConformResult:
    """The rule a tableau of a cf guarding obeys: left-right for r, t-conformity for l."""
    if model == "l":
        return check_conform(T, t)
    _check_color_range(T, t)
    return check_left_right(T)


def _xy_center(k: int, xy: str) -> int:
    """Column whose block B(.) is the half block B_X(k) or the quarter block B_XY(k)."""
    mid = left_center(k) if xy[0] == "L" else right_center(k)
    if len(xy) == 1:
        return mid
    return left_center(mid) if xy[1] == "L" else right_center(mid)


def _subblock_centers(start: int, width: int, K: int) -> Optional[List[int]]:
    if width <= 0 or (width + 1) % K:
        return None
    step = (width + 1) // K
    if step < 2:
        return None
    return [start - 1 + (l - 1) * step + step // 2 for l in range(1, K + 1)]


def _witness(T: MulticolorTableau, c: int, k: int, model: str) -> Tuple[Optional[str], range, Claim]:
    if model == "r":
        side, _ = half_witness(T, c, k)
        region = half_block(k, side) if side else range(0)
        holds = side is not None and all(_lr_condition(T, c, k, j) is None for j in region)
        return side, region, Claim(f"left-right conditions hold for all j in B_{side}({k})", holds)
    xy, _ = quarter_witness(T, c, 1, k)
    region = quarter_block(k, xy) if xy else range(0)
    holds = xy is not None and all(q_condition(T, c, 1, k, j) is None for j in region)
    return xy, region, Claim(f"Q({c},{k},j) holds for all j in B_{xy}({k})", holds)


def _stage(
    T: MulticolorTableau, t: int, target_m: int, s: int, excluded: List[int], model: str = "l"
) -> Tuple[StageRecord, Optional[MulticolorTableau], Optional[MulticolorTableau]]:
    """One stage; returns its record, the next stage tableau (case 2) and the reduced tableau (case 1)."""
    n = T.n_columns
    k = (n + 1) // 2
    base = dict(stage=s, columns=n, center=k, excluded=tuple(excluded))
    free = sorted(T.U(1, k) - set(excluded))
    if not free:
        return StageRecord(**base, outcome=TERMINAL, note="no unique top color left outside the excluded set"), None, None
    c = free[0]
    claims = [Claim(f"color {c} is unique in M(1,{k})", c in T.U(1, k))]
    xy, region, witnessed = _witness(T, c, k, model)
    if xy is None:
        note = "no half block satisfies the left-right rule" if model == "r" else "no quarter block satisfies Q"
        return StageRecord(**base, color=c, outcome=VIOLATION, note=note), None, None
    K = 1 << (target_m - 1)
    centers = _subblock_centers(region.start, len(region), K)
    if centers is None:
        return (
            StageRecord(**base, color=c, xy=xy, outcome=TERMINAL, note=f"B_{xy}({k}) too narrow for {K} subblocks"),
            None,
            None,
        )
    claims.append(witnessed)
    if model == "r":
        hits = [j if c in T.U(1, j) else None for j in centers]
    else:
        hits = [next((jj for jj in block(j) if c in T.U(1, jj)), None) for j in centers]

    if all(h is not None for h in hits):
        restricted = op_restrict_block(T, _xy_center(k, xy))
        offset = region.start - 1
        choices = {2 * l - 1: h - offset for l, h in enumerate(hits, start=1)}
        selected = op_select_columns(restricted, target_m, choices)
        claims.append(Claim(f"color {c} is unique in every top entry after selection", all(c in selected.U(1, j) for j in range(1, selected.n_columns + 1))))
        trimmed = op_delete_top_rows(selected, target_m)
        claims.append(Claim(f"color {c} no longer occurs after deleting top rows", all(c not in e for col in trimmed.columns for e in col)))
        try:
            reduced = relabel_colors(trimmed, {t: c}, t=t - 1) if t > 1 else None
        except TableauError:
            # colour t survived the relabelling; the claim above already records why
            reduced = None
        record = StageRecord(
            **base, color=c, xy=xy, subblock_centers=tuple(centers), case=1,
            odd_choices=tuple(sorted(choices.items())), outcome=CASE1_REDUCED, claims=tuple(claims),
        )
        return record, None, reduced

    chosen = next(l for l, h in enumerate(hits, start=1) if h is None)
    j = centers[chosen - 1]
    claims.append(Claim(f"color {c} is unique in no top entry of B({j})", all(c not in T.U(1, jj) for jj in block(j))))
    record = StageRecord(
        **base, color=c, xy=xy, subblock_centers=tuple(centers), case=2, chosen=chosen,
        outcome=CASE2_DESCEND, claims=tuple(claims),
    )
    return record, op_restrict_block(T, j), None


def default_target(t: int, model: str = "l") -> int:
    _check_model(model)
    return lb_size(t - 1, model) if t >= 2 else 1


def staged_reduction(T: MulticolorTableau, t: int, target_m: Optional[int] = None, model: str = "l") -> ReductionTrace:
    """Cut T stage by stage until a unique colour can be dropped (case 1) or no stage applies.

    ``model`` picks the witness: half blocks under the left-right rule for
    r-visibility, quarter blocks under property 3 for line visibility.
    """
    _check_model(model)
    target_m = default_target(t, model) if target_m is None else target_m
    if target_m < 1:
        raise IndexRangeError(f"target row count must be >= 1, got {target_m}")
    verdict = _conform(T, t, model)
    if not verdict.ok:
        logger.info("reduction stopped: %s", verdict.violation.message)
        return ReductionTrace(t, target_m, VIOLATION, violation=verdict.violation, model=model)
    stages: List[StageRecord] = []
    excluded: List[int] = []
    current = T
    for s in range(1, t + 1):
        record, nxt, reduced = _stage(current, t, target_m, s, excluded, model)
        stages.append(record)
        logger.debug("stage %d: %s (center %d, color %s)", s, record.outcome, record.center, record.color)
        if record.outcome == CASE1_REDUCED:
            ok = _conform(reduced, t - 1, model).ok if reduced is not None else None
            return ReductionTrace(t, target_m, CASE1_REDUCED, tuple(stages), reduced=reduced, reduced_conform=ok, model=model)
        if record.outcome != CASE2_DESCEND:
            return ReductionTrace(t, target_m, record.outcome, tuple(stages), model=model)
        excluded.append(record.color)
        current = nxt
    return ReductionTrace(t, target_m, TERMINAL, tuple(stages), model=model)


@dataclass(frozen=True)
class TraceCheck:
    ok: bool
    problems: Tuple[str, ...] = ()


def verify_trace(T: MulticolorTableau, trace: ReductionTrace, t: int) -> TraceCheck:
    """Replay the recorded choices and re-evaluate every recorded claim."""
    problems: List[str] = []
    model = trace.model
    if model not in MODELS:
        return TraceCheck(False, (f"unknown visibility model {model!r}",))
    if trace.outcome == VIOLATION and not trace.stages:
        v = _conform(T, t, model)
        if v.ok or v.violation != trace.violation:
            problems.append("recorded violation does not reproduce")
        return TraceCheck(not problems, tuple(problems))
    current, excluded = T, []
    for rec in trace.stages:
        record, nxt, reduced = _stage(current, t, trace.target_m, rec.stage, excluded, model)
        if record != rec:
            problems.append(f"stage {rec.stage} does not replay to the recorded choices")
            break
        problems.extend(f"stage {rec.stage}: claim fails: {cl.text}" for cl in rec.claims if not cl.holds)
        if rec.outcome == CASE1_REDUCED:
            if reduced != trace.reduced:
                problems.append("reduced tableau differs on replay")
            elif reduced is not None and _conform(reduced, t - 1, model).ok != trace.reduced_conform:
                problems.append("conformity of the reduced tableau differs on replay")
            break
        if rec.outcome != CASE2_DESCEND:
            break
        excluded.append(rec.color)
        current = nxt
    return TraceCheck(not problems, tuple(problems))
