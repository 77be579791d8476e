from fastapi import APIRouter, HTTPException
from fastapi.responses import Response

import config
from errors import ChromaError
from geometry import ensure_valid
from render import RenderSpec, render
from schemas import RenderIn

router = APIRouter()

@router.post("/render")
def render_svg(input: RenderIn):
    spec = RenderSpec(scale=input.scale or config.RENDER_SCALE, show_cells=input.show_cells, squash_rows=input.squash_rows)
    try:
        poly = ensure_valid(input.polygon.to_polygon())
        guarding = input.guarding.to_guarding() if input.guarding else None
        svg = render(poly, guarding, spec)
    except ChromaError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return Response(content=svg, media_type="image/svg+xml")
