from fastapi import APIRouter, HTTPException

import config
from errors import ChromaError
from schemas import MinColorsIn, SearchOut
from search import min_colors

router = APIRouter()

@router.post("/search/min-colors", response_model=SearchOut)
def search_min_colors(input: MinColorsIn):
    budget = min(input.budget or config.SEARCH_BUDGET_SECONDS, config.SEARCH_BUDGET_SECONDS)
    try:
        result = min_colors(input.polygon.to_polygon(), input.mode, "r", budget, input.max_t)
    except ChromaError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return SearchOut.from_result(result)
