from fastapi import APIRouter, HTTPException

from cells import canonical_cells
from chromatic import guard_forest
from errors import ChromaError
from geometry import classify_vertices, ensure_valid, format_coord, validate
from partition import window_partition
from schemas import CellsOut, DecomposeOut, PolygonIn, ValidationOut, VisTreeOut
from spikes import gen_spike

router = APIRouter()

@router.post("/polygons/validate", response_model=ValidationOut)
def validate_polygon(input: PolygonIn):
    poly = input.to_polygon()
    report = validate(poly)
    if not report.structurally_ok:
        return ValidationOut.from_report(report)
    labels = classify_vertices(poly)
    return ValidationOut.from_report(report, reflex=len(labels.reflex_indices), convex=labels.convex_count)

@router.get("/polygons/spike", response_model=PolygonIn)
def spike_polygon(m: int, stretched: bool = False):
    try:
        return PolygonIn.from_polygon(gen_spike(m, stretched))
    except ChromaError as exc:
        raise HTTPException(status_code=400, detail=str(exc))

@router.post("/polygons/cells", response_model=CellsOut)
def polygon_cells(input: PolygonIn):
    try:
        grid = ensure_valid(input.to_polygon()).grid
    except ChromaError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return CellsOut(
        xcuts=[format_coord(x) for x in grid.xcuts],
        ycuts=[format_coord(y) for y in grid.ycuts],
        inside_cells=grid.inside_count,
        classes=len(canonical_cells(grid)),
    )

@router.post("/partition", response_model=VisTreeOut)
def partition_polygon(input: PolygonIn):
    try:
        return VisTreeOut.from_tree(window_partition(input.to_polygon()))
    except ChromaError as exc:
        raise HTTPException(status_code=400, detail=str(exc))

@router.post("/decompose", response_model=DecomposeOut)
def decompose_polygon(input: PolygonIn):
    try:
        return DecomposeOut.from_forest(guard_forest(input.to_polygon()))
    except ChromaError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
