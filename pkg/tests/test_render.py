"""Scene building and SVG output."""
from fractions import Fraction

import pytest

from tests.strategies import LINE, STANDARD_LINE, WEIGHTED_CONIC
from tropica.utils.curves import tropical_curve
from tropica.utils.errors import EmptyViewport, MalformedInput
from tropica.utils.geometry import Piece
from tropica.utils.patchwork import build_real_curve, patchwork_enumerate, quadrant_drawing, survivors_from_signs
from tropica.utils.render import (
    RenderSpec,
    clip_piece,
    curve_scene,
    padded_box,
    patchwork_scene,
    render_svg,
    subdivision_scene,
)
from tropica.utils.serialize import parse_bi
from tropica.utils.subdivision import dual_subdivision

F = Fraction


def test_clip_piece():
    box = (F(-1), F(-1), F(2), F(1))
    ray = Piece((F(0), F(0)), (1, 1), F(0), None)
    assert clip_piece(ray, box) == ((0, 0), (1, 1))
    line = Piece((F(0), F(5)), (1, 0), None, None)
    assert clip_piece(line, box) is None
    edge = Piece((F(-3), F(0)), (1, 0), F(0), F(10))
    assert clip_piece(edge, box) == ((-1, 0), (2, 0))


def test_padded_box_widens_a_single_point():
    assert padded_box([(0, 0)], F(0)) == (-1, -1, 1, 1)
    assert padded_box([(0, 0), (4, 2)], F(1, 4)) == (-1, F(-1, 2), 5, F(5, 2))
    with pytest.raises(EmptyViewport):
        padded_box([], F(0))


def test_line_scene():
    scene = curve_scene(tropical_curve(parse_bi(LINE)))
    assert len(scene.segments) == 3
    assert scene.dots == [(F(-3, 2), F(11, 2))]
    assert not scene.labels


def test_weights_are_labelled():
    scene = curve_scene(tropical_curve(parse_bi(WEIGHTED_CONIC)))
    assert [label.text for label in scene.labels] == ["2", "2"]
    quiet = curve_scene(tropical_curve(parse_bi(WEIGHTED_CONIC)), RenderSpec(label_weights=False))
    assert not quiet.labels


def test_subdivision_scene(conic):
    scene = subdivision_scene(dual_subdivision(conic))
    assert len(scene.segments) == 9
    assert len(scene.dots) == 9
    heavy = subdivision_scene(dual_subdivision(parse_bi(WEIGHTED_CONIC)))
    assert any(seg.weight == 2 for seg in heavy.segments)


def test_patchwork_scene():
    line = tropical_curve(parse_bi(STANDARD_LINE))
    R = build_real_curve(line, survivors_from_signs(line, {(0, 0): 1, (1, 0): -1, (0, 1): -1}))
    scene = patchwork_scene(R)
    assert sum(1 for seg in scene.segments if seg.style == "axis") == 2
    assert len(scene.segments) == 8
    assert scene.viewport == (-3, -3, 3, 3)


def test_patchwork_scene_marks_gluing_points_on_the_axes():
    line = tropical_curve(parse_bi(STANDARD_LINE))
    for R in patchwork_enumerate(line):
        scene = patchwork_scene(R)
        drawing = quadrant_drawing(R)
        assert len(R.gluings) == 2
        assert len(scene.dots) == 2
        for one, other in R.gluings:
            assert drawing[one][-1] == drawing[other][-1]
            assert drawing[one][-1] in scene.dots
        assert all(0 in dot for dot in scene.dots)


def test_svg_is_deterministic(tmp_path):
    scene = curve_scene(tropical_curve(parse_bi(WEIGHTED_CONIC)))
    target = tmp_path / "conic.svg"
    first = render_svg(scene, RenderSpec(output=str(target)))
    second = render_svg(scene)
    assert first == second
    assert first.lstrip().startswith("<?xml") and "<svg" in first
    assert target.read_text(encoding="utf-8") == first


def test_empty_viewports():
    with pytest.raises(EmptyViewport):
        RenderSpec(viewport=(0, 0, 0, 1))
    with pytest.raises(EmptyViewport):
        curve_scene(tropical_curve(parse_bi("3x^2y")))
    with pytest.raises(MalformedInput):
        RenderSpec(padding=F(-1))


def test_explicit_viewport_drops_pieces_outside():
    spec = RenderSpec(viewport=(F(10), F(10), F(11), F(11)))
    assert curve_scene(tropical_curve(parse_bi(LINE)), spec).segments == []
