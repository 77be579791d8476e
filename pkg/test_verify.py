import pytest

from chromatic import ChromaticGuarding, cf_coloring, strong_coloring
from conftest import rectangle
from errors import GuardPlacementError, UnsupportedModelError
from geometry import Point
from spikes import gen_spike
from verify import (
    guard_cells,
    l_multisets,
    r_multisets,
    special_indices,
    verify,
    verify_cf,
    verify_cover,
    verify_strong,
)

S2 = gen_spike(2)


def guarding(*pairs):
    return ChromaticGuarding.of([(Point.of(x, y), c) for x, y, c in pairs])


# -----------------------------
# r-visibility
# -----------------------------
def test_single_guard_leaves_the_deep_columns_uncovered():
    verdict = verify_cover(S2, guarding((3, "-1/2", 1)))
    assert not verdict.ok
    assert verdict.reason == "uncovered"
    assert verdict.cell == (0, 0)
    assert verdict.point == Point.of(1, "-3/2")
    assert verdict.message == "uncovered: cell (0, 0) at (1, -3/2)"


def test_deep_guards_leave_the_middle_uncovered():
    verdict = verify_cf(S2, guarding((1, "-3/2", 1), (5, "-3/2", 1)))
    assert verdict.reason == "uncovered"
    assert verdict.cell == (1, 1)


def test_same_color_pair():
    s1 = gen_spike(1)
    verdict = verify_strong(s1, guarding((1, "-1/4", 1), (1, "-3/4", 1)))
    assert verdict.reason == "same-color-pair"
    assert verdict.cell == (0, 0)
    assert verdict.guards == (0, 1)
    assert verdict.colors == {1: 2}


def test_no_unique_color():
    s1 = gen_spike(1)
    g = guarding((1, "-1/4", 1), (1, "-3/4", 1))
    verdict = verify_cf(s1, g)
    assert verdict.reason == "no-unique-color"
    assert verify_cover(s1, g).ok


def test_coverage_is_reported_first():
    g = guarding((1, "-3/2", 1), (1, "-1/2", 1))
    assert verify_strong(S2, g).reason == "uncovered"


def test_guard_on_a_grid_line_is_rejected():
    with pytest.raises(GuardPlacementError):
        guard_cells(S2, guarding((2, "-1/2", 1)))
    with pytest.raises(GuardPlacementError):
        verify_cover(S2, guarding((3, "-3/2", 1)))


def test_r_multisets():
    sets = r_multisets(S2, cf_coloring(S2))
    assert sets[(1, 1)] == {1: 1}
    assert sets[(0, 1)] == {1: 1, 2: 1}
    assert sets[(0, 0)] == {2: 1}
    assert len(sets) == 5


def test_computed_guardings_verify():
    for m in range(1, 5):
        poly = gen_spike(m)
        assert verify(poly, strong_coloring(poly), "strong").ok
        assert verify(poly, cf_coloring(poly), "cf").ok
        assert verify(poly, cf_coloring(poly), "cover").ok


def test_verify_arguments():
    g = cf_coloring(S2)
    with pytest.raises(UnsupportedModelError):
        verify(S2, g, "strong", "l")
    with pytest.raises(ValueError):
        verify(S2, g, "colorful")
    with pytest.raises(UnsupportedModelError):
        verify(S2, g, "cf", "x")


# -----------------------------
# l-visibility
# -----------------------------
def test_special_indices_order():
    assert special_indices(2) == [(1, 1), (1, 2), (1, 3), (2, 1), (2, 3)]


def test_l_model_needs_a_spike():
    with pytest.raises(UnsupportedModelError):
        verify(rectangle(3, 2), guarding(("1/2", "1/2", 1)), "cf", "l")


def test_l_model_on_the_stretched_s2():
    poly = gen_spike(2, stretched=True)
    g = guarding((3, "-1/2", 1), (1, "-5/2", 2), (5, "-5/2", 2))
    spec, seen = l_multisets(poly, g)
    assert (spec.m, spec.stretched) == (2, True)
    assert seen[(1, 1)] == (0, 1)
    assert seen[(1, 2)] == (0,)
    assert seen[(2, 1)] == (1,)
    assert verify_cf(poly, g, "l").ok


def test_l_model_uncovered_special_point():
    poly = gen_spike(2, stretched=True)
    verdict = verify_cf(poly, guarding((3, "-1/2", 1)), "l")
    assert verdict.reason == "uncovered"
    assert verdict.special == (2, 1)
    assert verdict.point == Point.of(1, -4)


def test_l_model_guard_outside():
    poly = gen_spike(2, stretched=True)
    with pytest.raises(GuardPlacementError):
        verify_cf(poly, guarding((3, -2, 1)), "l")


def test_l_model_on_the_stretched_s3():
    poly = gen_spike(3, stretched=True)
    g = guarding(
        (7, "-1/2", 1),
        (3, "-9/2", 2), (11, "-9/2", 2),
        (1, -36, 1), (5, -36, 1), (9, -36, 1), (13, -36, 1),
    )
    assert verify_cf(poly, g, "l").ok
