from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cells import CellGrid, build_grid, canonical_cells, cells_r_visible, trace_outline
from conftest import L_SHAPE, SPIRAL_12, histogram, rectangle, staircase
from errors import ChromaError
from geometry import OrthoPolygon, Point, classify_vertices, validate
from spikes import gen_spike

T_SHAPE = OrthoPolygon.from_pairs([(0, 0), (3, 0), (3, 1), (2, 1), (2, 2), (1, 2), (1, 1), (0, 1)])


def coords(cls):
    return [(c.a, c.b) for c in cls]


# -----------------------------
# Grid construction
# -----------------------------
def test_grid_of_s2():
    grid = build_grid(gen_spike(2))
    assert grid.xcuts == (0, 2, 4, 6)
    assert grid.ycuts == (-2, -1, 0)
    assert grid.shape == (3, 2)
    assert grid.inside_count == 5
    assert not grid.inside[1, 0]
    assert grid.center(1, 1) == Point.of(3, "-1/2")


def test_grid_of_the_spiral():
    grid = SPIRAL_12.grid
    assert grid.xcuts == tuple(Fraction(x) for x in range(6))
    assert grid.ycuts == (0, 1, 2, 4, 5)
    assert grid.inside_count == 14
    assert len(classify_vertices(SPIRAL_12).reflex_indices) == 4


def test_mask_shape_must_match_cuts():
    with pytest.raises(ChromaError):
        CellGrid([0, 1, 2], [0, 1], np.ones((1, 1), dtype=bool))


def test_grid_is_read_only():
    grid = rectangle(2, 1).grid
    with pytest.raises(ValueError):
        grid.inside[0, 0] = False


def test_cell_of_point():
    grid = gen_spike(2).grid
    assert grid.cell_of_point(Point.of(1, "-3/2")) == (0, 0)
    assert grid.cell_of_point(Point.of(2, "-1/2")) is None
    assert grid.cell_of_point(Point.of(7, "-1/2")) is None


def test_covers_closed_rectangles():
    grid = gen_spike(2).grid
    assert grid.covers(Fraction(0), Fraction(6), Fraction(-1), Fraction(0))
    assert not grid.covers(Fraction(0), Fraction(6), Fraction(-2), Fraction(0))
    assert grid.covers(Fraction(1), Fraction(1), Fraction(-2), Fraction(0))
    assert not grid.covers(Fraction(3), Fraction(3), Fraction(-2), Fraction(-2))


def test_block_queries():
    grid = gen_spike(2).grid
    assert grid.block_count(0, 3, 0, 2) == 5
    assert grid.all_inside(0, 3, 1, 2)
    assert not grid.all_inside(0, 3, 0, 2)
    assert not grid.all_inside(1, 1, 0, 1)


# -----------------------------
# Cell visibility
# -----------------------------
def test_cells_r_visible_across_the_top_row():
    grid = gen_spike(2).grid
    left, right, middle = grid.cell(0, 0), grid.cell(2, 0), grid.cell(1, 1)
    assert not cells_r_visible(left, right, grid)
    assert cells_r_visible(grid.cell(0, 1), grid.cell(2, 1), grid)
    assert not cells_r_visible(left, middle, grid)


def test_visibility_bits_count_inside_cells():
    grid = gen_spike(3).grid
    cells, bits = grid.visibility_bits()
    assert len(cells) == len(bits) == grid.inside_count == 17
    for i, b in enumerate(bits):
        assert b >> i & 1


@pytest.mark.parametrize(
    "poly, expected",
    [
        (rectangle(1, 1), 1),
        (rectangle(3, 2), 1),
        (L_SHAPE, 3),
        (T_SHAPE, 3),
        (gen_spike(2), 5),
    ],
)
def test_canonical_class_counts(poly, expected):
    assert len(canonical_cells(poly.grid)) == expected


def test_t_shape_classes():
    classes = canonical_cells(T_SHAPE.grid)
    assert [coords(c) for c in classes] == [[(0, 0), (2, 0)], [(1, 0)], [(1, 1)]]


depth_lists = st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=7)


@settings(max_examples=60, deadline=None)
@given(depth_lists)
def test_canonical_classes_partition_the_inside(depths):
    grid = histogram(depths).grid
    classes = canonical_cells(grid)
    members = [c for cls in classes for c in cls]
    assert len(members) == len(set(members)) == grid.inside_count
    for cls in classes:
        first = grid.visible_from(cls[0].a, cls[0].b)
        for c in cls[1:]:
            assert np.array_equal(grid.visible_from(c.a, c.b), first)


# -----------------------------
# Outline tracing
# -----------------------------
def test_trace_staircase():
    poly = staircase(3)
    assert poly.to_pairs() == [
        ("0", "0"), ("3", "0"), ("3", "1"), ("2", "1"),
        ("2", "2"), ("1", "2"), ("1", "3"), ("0", "3"),
    ]
    assert validate(poly).ok


def test_trace_histogram_merges_equal_columns():
    poly = histogram([2, 2, 1])
    assert poly.n == 6
    assert validate(poly).ok


@pytest.mark.parametrize(
    "cells",
    [
        [],
        [(0, 0), (1, 1)],
        [(a, b) for a in range(3) for b in range(3) if (a, b) != (1, 1)],
    ],
)
def test_trace_rejects_bad_cell_sets(cells):
    with pytest.raises(ChromaError):
        trace_outline(cells, range(4), range(4))
