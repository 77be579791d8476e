import re
from fractions import Fraction

from chromatic import cf_coloring
from render import RenderSpec, _hue, palette, render
from spikes import gen_spike


def test_hues_bisect_the_circle():
    assert [_hue(c) for c in range(1, 6)] == [0, Fraction(1, 2), Fraction(1, 4), Fraction(3, 4), Fraction(1, 8)]


def test_palette_colors_are_distinct_hex():
    colors = [palette(c) for c in range(1, 9)]
    assert all(re.fullmatch(r"#[0-9a-f]{6}", c) for c in colors)
    assert len(set(colors)) == len(colors)


def test_outline_only():
    svg = render(gen_spike(2))
    assert svg.startswith("<svg")
    assert 'id="outline"' in svg
    assert svg.count("<line") == 8
    assert "<circle" not in svg


def test_guards_and_legend():
    poly = gen_spike(2)
    svg = render(poly, cf_coloring(poly))
    assert svg.count("<circle") == 3
    assert "color 1" in svg and "color 2" in svg
    assert palette(2) in svg


def test_cells_layer():
    svg = render(gen_spike(2), spec=RenderSpec(scale=10, show_cells=True))
    assert 'id="cells"' in svg
    assert svg.count("<polygon") == 5


def test_stretched_rows_are_annotated_when_squashed():
    poly = gen_spike(3, stretched=True)
    svg = render(poly, spec=RenderSpec(squash_rows=True))
    assert "row 1: depth 1" in svg
    assert "row 3: depth 2^6" in svg
    assert "row 3" not in render(poly)
