from typing import Literal, Optional

from fastapi import APIRouter, HTTPException

from errors import ChromaError
from schemas import ConformOut, ExtractIn, TableauIn, TraceOut
from tableau import check_conform, check_left_right, extract_l, extract_r, staged_reduction, verify_trace

router = APIRouter()

@router.post("/tableaux/extract", response_model=TableauIn)
def extract_tableau(input: ExtractIn, vis: Literal["r", "l"] = "r"):
    try:
        guarding = input.guarding.to_guarding()
        T = extract_r(input.m, guarding) if vis == "r" else extract_l(input.m, guarding)
    except ChromaError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return TableauIn.from_tableau(T)

@router.post("/tableaux/check", response_model=ConformOut)
def check_tableau(input: TableauIn, t: Optional[int] = None, left_right: bool = False):
    try:
        T = input.to_tableau()
        result = check_left_right(T) if left_right else check_conform(T, t or T.t)
    except ChromaError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return ConformOut.from_result(result)

@router.post("/tableaux/reduce", response_model=TraceOut)
def reduce_tableau(input: TableauIn, t: int, target_m: Optional[int] = None, vis: Literal["r", "l"] = "l"):
    try:
        T = input.to_tableau()
        trace = staged_reduction(T, t, target_m, vis)
    except ChromaError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return TraceOut.from_trace(trace, replay_ok=verify_trace(T, trace, t).ok)
