import random
from pathlib import Path

import pytest

from cells import trace_outline
from geometry import OrthoPolygon
from spikes import gen_spike

FIXTURES = Path(__file__).parent / "fixtures"


# -----------------------------
# Polygon builders
# -----------------------------
def rectangle(w, h):
    return OrthoPolygon.from_pairs([(0, 0), (w, 0), (w, h), (0, h)])


def histogram(depths):
    """Columns of unit width hanging down from y = 0."""
    top = max(depths)
    cells = [(a, b) for a, d in enumerate(depths) for b in range(top - d, top)]
    return trace_outline(cells, range(len(depths) + 1), range(-top, 1))


def staircase(n):
    cells = [(a, b) for a in range(n) for b in range(n - a)]
    return trace_outline(cells, range(n + 1), range(n + 1))


def random_histogram(seed, width=8, max_depth=4):
    rng = random.Random(seed)
    return histogram([rng.randint(1, max_depth) for _ in range(width)])


STEPS = {"N": (0, 1), "S": (0, -1), "E": (1, 0), "W": (-1, 0)}


def corridor(start, moves):
    """Unit-wide corridor walked cell by cell from ``start``; ``moves`` is a list of (direction, length)."""
    a, b = start
    cells = [(a, b)]
    for heading, length in moves:
        da, db = STEPS[heading]
        for _ in range(length):
            a, b = a + da, b + db
            cells.append((a, b))
    width = max(c[0] for c in cells) + 2
    height = max(c[1] for c in cells) + 2
    return trace_outline(cells, range(width), range(height))


L_SHAPE = OrthoPolygon.from_pairs([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])

# left column, bottom row, right column, top bar and a hook hanging from it
SPIRAL_12 = OrthoPolygon.from_pairs([
    (0, 0), (5, 0), (5, 5), (2, 5), (2, 2), (3, 2),
    (3, 4), (4, 4), (4, 1), (1, 1), (1, 5), (0, 5),
])

# reflex vertices (1, 2) and (3, 2) face each other across an interior chord
Z_SHAPE = OrthoPolygon.from_pairs([(0, 0), (3, 0), (3, 2), (4, 2), (4, 3), (1, 3), (1, 2), (0, 2)])

# eight runs winding inwards; walls between the rings are one cell thick
SPIRAL_18 = corridor((0, 8), [("S", 8), ("E", 8), ("N", 8), ("W", 6), ("S", 6), ("E", 4), ("N", 4), ("W", 2)])

# top bar with three hanging towers, each with a side pocket; the middle pocket has one of its own
POCKETS = trace_outline(
    [(a, 9) for a in range(13)]
    + [(1, b) for b in range(3, 9)] + [(0, 4)]
    + [(5, b) for b in range(9)] + [(6, 2), (7, 2), (8, 2), (8, 1)]
    + [(11, b) for b in range(5, 9)] + [(9, 6), (10, 6)],
    range(14),
    range(11),
)

CORPUS = {
    "square": lambda: rectangle(1, 1),
    "rect3x2": lambda: rectangle(3, 2),
    "l_shape": lambda: L_SHAPE,
    "staircase3": lambda: staircase(3),
    "staircase4": lambda: staircase(4),
    "staircase5": lambda: staircase(5),
    "comb5": lambda: histogram([2, 1, 2, 1, 2]),
    "plateaus": lambda: histogram([2, 3, 2, 3, 2]),
    "valleys": lambda: histogram([3, 1, 2, 1, 3]),
    "nested": lambda: histogram([1, 3, 2, 3, 1]),
    "mixed": lambda: histogram([3, 1, 4, 2, 4]),
    "spiral12": lambda: SPIRAL_12,
    "spiral18": lambda: SPIRAL_18,
    "pockets": lambda: POCKETS,
    **{f"S{m}": (lambda m=m: gen_spike(m)) for m in range(1, 6)},
    **{f"S{m}_stretched": (lambda m=m: gen_spike(m, stretched=True)) for m in (2, 3)},
    **{f"random{seed}": (lambda seed=seed: random_histogram(seed)) for seed in range(6)},
}


@pytest.fixture(params=sorted(CORPUS))
def corpus_polygon(request):
    return CORPUS[request.param]()


@pytest.fixture
def spiral():
    return SPIRAL_12


@pytest.fixture
def l_shape():
    return L_SHAPE


@pytest.fixture
def all_ones_path():
    return FIXTURES / "all_ones_3x7.json"
