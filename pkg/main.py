import logging

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

import config

# Import routers directly from routes folder
from routes import guardings, polygons, render, search, tableaux

logging.basicConfig(level=config.LOG_LEVEL)

# -----------------------------
# App setup
# -----------------------------
app = FastAPI(title="Chromaguard", version="1.0.0")

# Mount routers
app.include_router(polygons.router)
app.include_router(guardings.router)
app.include_router(tableaux.router)
app.include_router(search.router)
app.include_router(render.router)

app.add_middleware(
    CORSMiddleware,
    allow_origins=config.CORS_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

@app.get("/")
def root():
    return {"service": "chromaguard", "status": "ok"}
