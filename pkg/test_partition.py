import pytest

from conftest import POCKETS, SPIRAL_18, staircase
from errors import IndexRangeError, InvalidPolygonError, PartitionError
from geometry import OrthoPolygon, Point, classify_vertices
from partition import (
    footprint,
    independence_classes,
    root_edge,
    weak_vis_polygon,
    window_partition,
)
from spikes import gen_spike


# -----------------------------
# Weak visibility polygons
# -----------------------------
def test_root_of_s2_is_the_whole_polygon():
    poly = gen_spike(2)
    assert root_edge(poly) == poly.n - 2
    wvp = weak_vis_polygon(poly, poly.n - 2)
    assert wvp.axis == "h"
    assert wvp.step == -1
    assert wvp.depths == (2, 1, 2)
    assert wvp.windows == ()
    assert len(wvp.cells) == poly.grid.inside_count
    assert wvp.base == (Point.of(0, 0), Point.of(6, 0))
    assert wvp.cell_at(0, 1) == (0, 1)
    assert wvp.travel == (0, -1)


@pytest.mark.parametrize("m", [3, 4, 5])
def test_spike_root_edge_is_second_to_last(m):
    poly = gen_spike(m)
    assert root_edge(poly) == poly.n - 2


def test_vertical_edge_is_rejected():
    with pytest.raises(PartitionError):
        weak_vis_polygon(gen_spike(2), 1)


def test_edge_with_reflex_end_is_rejected():
    with pytest.raises(PartitionError):
        weak_vis_polygon(gen_spike(2), 2)


def test_edge_index_out_of_range():
    with pytest.raises(IndexRangeError):
        weak_vis_polygon(gen_spike(2), 99)


def test_invalid_polygon_is_rejected():
    clockwise = OrthoPolygon.from_pairs([(0, 0), (0, 1), (1, 1), (1, 0)])
    with pytest.raises(InvalidPolygonError):
        window_partition(clockwise)


def test_subpolygon_outline(spiral):
    root = window_partition(spiral).root.wvp
    assert root.depths == (4,)
    assert root.subpolygon.to_pairs() == [("0", "0"), ("1", "0"), ("1", "5"), ("0", "5")]


# -----------------------------
# Window partition
# -----------------------------
def test_l_shape_partition(l_shape):
    tree = window_partition(l_shape)
    assert len(tree.nodes) == 2
    child = tree.nodes[1]
    assert child.parent == 0
    assert child.side == "L"
    assert child.group == 3
    assert tree.root.children == [1]


def test_spiral_is_a_chain(spiral):
    tree = window_partition(spiral)
    assert tree.root_edge == 10
    assert len(tree.root.wvp.windows) == 1
    assert [node.depth for node in tree.nodes] == [0, 1, 2, 3, 4]
    assert [node.parent for node in tree.nodes] == [None, 0, 1, 2, 3]
    assert all(node.side == "L" for node in tree.nodes)
    assert [node.group for node in tree.nodes] == [1, 3, 5, 1, 3]
    assert tree.height == 4


def test_eighteen_vertex_spiral_is_a_deeper_chain():
    assert SPIRAL_18.n == 18
    assert len(classify_vertices(SPIRAL_18).reflex_indices) == 7
    tree = window_partition(SPIRAL_18)
    assert len(tree.nodes) == 8
    assert all(len(node.children) <= 1 for node in tree.nodes)
    assert [node.parent for node in tree.nodes] == [None, 0, 1, 2, 3, 4, 5, 6]
    assert all(node.side == "L" for node in tree.nodes)
    assert tree.height == 7


def test_pockets_hang_off_the_root():
    tree = window_partition(POCKETS)
    assert len(tree.root.children) == 3
    assert [tree.nodes[c].side for c in tree.root.children] == ["R", "L", "R"]
    assert tree.height == 2
    assert len(tree.nodes) == 5


@pytest.mark.parametrize("n", [3, 4, 5])
def test_staircase_has_one_vertical_child(n):
    tree = window_partition(staircase(n))
    assert tree.root.wvp.lanes == range(0, 1)
    assert len(tree.nodes) == 2
    child = tree.nodes[1].wvp
    assert child.axis == "v"
    assert child.depths == tuple(range(n - 1, 0, -1))


def test_nodes_partition_the_inside(corpus_polygon):
    tree = window_partition(corpus_polygon)
    seen = set()
    for node in tree.nodes:
        assert not seen & node.wvp.cells
        seen |= node.wvp.cells
    assert len(seen) == corpus_polygon.grid.inside_count
    assert len(tree.nodes) <= max(1, corpus_polygon.n // 2 - 1)


# -----------------------------
# Independence
# -----------------------------
def test_spiral_groups(spiral):
    classes = independence_classes(window_partition(spiral))
    assert classes.groups[1] == (0, 3)
    assert classes.groups[3] == (1, 4)
    assert classes.groups[2] == ()
    assert classes.group_of(2) == 5
    assert classes.labelled()["A1L"] == (1, 4)
    with pytest.raises(IndexRangeError):
        classes.group_of(9)


def test_same_group_footprints_are_disjoint(corpus_polygon):
    tree = window_partition(corpus_polygon)
    classes = independence_classes(tree)
    for members in classes.groups.values():
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                overlap = footprint(tree.nodes[a].wvp) & footprint(tree.nodes[b].wvp)
                assert not overlap.any()
