import os

# -----------------------------
# Config
# -----------------------------
LOG_LEVEL = os.getenv("CHROMAGUARD_LOG_LEVEL", "WARNING")

# wall-clock seconds per exists_guarding call
SEARCH_BUDGET_SECONDS = float(os.getenv("CHROMAGUARD_SEARCH_BUDGET", "600"))

MAX_SPIKE_M = int(os.getenv("CHROMAGUARD_MAX_SPIKE_M", "16"))
MAX_STRETCHED_M = int(os.getenv("CHROMAGUARD_MAX_STRETCHED_M", "6"))

RENDER_SCALE = float(os.getenv("CHROMAGUARD_RENDER_SCALE", "24"))

CORS_ORIGINS = [o.strip() for o in os.getenv("CHROMAGUARD_CORS_ORIGINS", "*").split(",") if o.strip()]
