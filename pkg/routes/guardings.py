from typing import Literal

from fastapi import APIRouter, HTTPException

from chromatic import color, ruler_sequence
from errors import ChromaError
from schemas import GuardingIn, PolygonGuardingIn, PolygonIn, VerdictOut
from verify import verify

router = APIRouter()

@router.post("/guardings/color", response_model=GuardingIn)
def color_polygon(input: PolygonIn, mode: Literal["strong", "cf"] = "cf"):
    try:
        return GuardingIn.from_guarding(color(input.to_polygon(), mode))
    except ChromaError as exc:
        raise HTTPException(status_code=400, detail=str(exc))

@router.post("/guardings/verify", response_model=VerdictOut)
def verify_guarding(input: PolygonGuardingIn, mode: Literal["cover", "strong", "cf"] = "cf", vis: Literal["r", "l"] = "r"):
    try:
        verdict = verify(input.polygon.to_polygon(), input.guarding.to_guarding(), mode, vis)
    except ChromaError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return VerdictOut.from_verdict(verdict)

@router.get("/sequence/{m}")
def ruler_word(m: int):
    if m < 1 or m > 20:
        raise HTTPException(status_code=400, detail="m must lie in [1, 20]")
    return {"m": m, "sequence": list(ruler_sequence(m))}
