from collections import Counter

import pytest

from chromatic import (
    ChromaticGuarding,
    cf_coloring,
    color,
    guard_forest,
    ruler_order,
    ruler_sequence,
    strong_coloring,
)
from errors import IndexRangeError
from geometry import Point
from spikes import gen_spike
from verify import verify_cf, verify_strong


# -----------------------------
# Ruler sequence
# -----------------------------
def test_ruler_sequence_prefixes():
    assert ruler_sequence(1) == (1,)
    assert ruler_sequence(3) == (1, 2, 1, 3, 1, 2, 1)
    assert len(ruler_sequence(6)) == 63
    with pytest.raises(IndexRangeError):
        ruler_sequence(0)


@pytest.mark.parametrize("height, order", [(1, 1), (2, 2), (3, 2), (4, 3), (7, 3), (8, 4)])
def test_ruler_order(height, order):
    assert ruler_order(height) == order


@pytest.mark.parametrize("i", range(1, 11))
def test_every_subword_has_a_unique_symbol(i):
    word = ruler_sequence(i)
    for start in range(len(word)):
        counts = Counter()
        singles = 0
        for sym in word[start:]:
            counts[sym] += 1
            if counts[sym] == 1:
                singles += 1
            elif counts[sym] == 2:
                singles -= 1
            assert singles > 0


@pytest.mark.parametrize("i", range(1, 11))
def test_prefixes_use_few_symbols(i):
    word = ruler_sequence(i)
    distinct = set()
    for k, sym in enumerate(word, start=1):
        distinct.add(sym)
        assert len(distinct) <= k.bit_length()


# -----------------------------
# Guardings
# -----------------------------
def test_guarding_properties():
    g = ChromaticGuarding.of([(Point.of(0, 0), 1), (Point.of(1, 0), 4), (Point.of(2, 0), 4)])
    assert g.t == 4
    assert g.distinct_colors == 2
    assert ChromaticGuarding(()).t == 0


def test_unknown_mode():
    with pytest.raises(ValueError):
        color(gen_spike(2), "rainbow")


def test_forest_has_one_tree_per_node(spiral):
    forest = guard_forest(spiral)
    assert len(forest.trees) == len(forest.vis_tree.nodes) == 5
    assert all(len(tree.nodes) == 1 for _, tree in forest.trees)


@pytest.mark.parametrize("m", range(1, 9))
def test_strong_coloring_of_spikes(m):
    g = strong_coloring(gen_spike(m))
    assert g.t == m
    assert g.distinct_colors == m
    assert len(g.guards) == 2 ** m - 1
    assert verify_strong(gen_spike(m), g).ok


@pytest.mark.parametrize("m", range(1, 11))
def test_cf_coloring_of_spikes(m):
    poly = gen_spike(m)
    g = cf_coloring(poly)
    assert g.distinct_colors == m.bit_length()
    assert len(g.guards) == 2 ** m - 1
    assert verify_cf(poly, g).ok


def test_cf_coloring_of_s2():
    g = cf_coloring(gen_spike(2))
    placed = sorted((guard.point, guard.color) for guard in g.guards)
    assert placed == [
        (Point.of(1, "-3/2"), 2),
        (Point.of(3, "-1/2"), 1),
        (Point.of(5, "-3/2"), 2),
    ]


def test_spiral_colors(spiral):
    g = strong_coloring(spiral)
    assert [(guard.point, guard.color) for guard in g.guards] == [
        (Point.of("1/2", "9/2"), 1),
        (Point.of("3/2", "1/2"), 3),
        (Point.of("9/2", "3/2"), 5),
        (Point.of("7/2", "9/2"), 1),
        (Point.of("5/2", 3), 3),
    ]
    assert [guard.group for guard in g.guards] == [1, 3, 5, 1, 3]
    assert g.distinct_colors == 3
    assert verify_strong(spiral, g).ok
    assert verify_cf(spiral, cf_coloring(spiral)).ok


def test_l_shape_colors(l_shape):
    g = strong_coloring(l_shape)
    assert [(guard.point, guard.color) for guard in g.guards] == [
        (Point.of("1/2", "3/2"), 1),
        (Point.of("3/2", "1/2"), 3),
    ]
    assert verify_strong(l_shape, g).ok


def test_corpus_colorings_verify(corpus_polygon):
    height = max(tree.height for _, tree in guard_forest(corpus_polygon).trees)
    strong = strong_coloring(corpus_polygon)
    cf = cf_coloring(corpus_polygon)
    assert verify_strong(corpus_polygon, strong).ok
    assert verify_cf(corpus_polygon, cf).ok
    assert strong.t <= 6 * height
    assert cf.t <= 6 * height.bit_length()
