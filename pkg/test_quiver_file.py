#!/usr/bin/env python3
"""
Tests for the .quiver text format
"""

import pytest

from conftest import fixture_path
from gentle.errors import DuplicateDeclaration, InvalidPresentation, QuiverSyntaxError, UndeclaredLabel
from gentle.quiver_file import (
    load_presentation,
    parse_quiver_file,
    presentation_to_quiver_file,
    render_quiver_file,
)

SMALL = """\
# a path with one relation
quiver small
vertices: u v w
arrow x: u -> v
arrow y: v -> w   # trailing comment
rel y * x
"""


def test_parse_small():
    qf = parse_quiver_file(SMALL)
    assert qf.name == "small"
    assert [v.label for v in qf.vertices] == ["u", "v", "w"]
    assert [(a.label, a.source, a.target) for a in qf.arrows] == [("x", "u", "v"), ("y", "v", "w")]
    assert [(r.second, r.first, r.line) for r in qf.relations] == [("y", "x", 6)]
    assert qf.comments == [(1, "a path with one relation"), (5, "trailing comment")]


def test_vertex_columns():
    qf = parse_quiver_file(SMALL)
    assert [(v.line, v.col) for v in qf.vertices] == [(3, 11), (3, 13), (3, 15)]


def test_load_fixture(worked):
    assert worked.quiver.name == "worked_example"
    assert worked.num_arrows == 9


def test_name_defaults_to_file_stem(tmp_path):
    path = tmp_path / "unnamed.quiver"
    path.write_text("vertices: a b\narrow x: a -> b\n")
    assert load_presentation(path).quiver.name == "unnamed"


def test_undeclared_vertex_position():
    with pytest.raises(UndeclaredLabel) as exc:
        parse_quiver_file("vertices: u v\narrow x: u -> w\n")
    assert (exc.value.label, exc.value.line, exc.value.col) == ("w", 2, 15)


def test_undeclared_arrow_in_relation():
    with pytest.raises(UndeclaredLabel) as exc:
        parse_quiver_file("vertices: u v\narrow x: u -> v\nrel z * x\n")
    assert (exc.value.line, exc.value.col) == (3, 5)


def test_duplicate_declarations():
    with pytest.raises(DuplicateDeclaration) as exc:
        parse_quiver_file("vertices: u v u\n")
    assert (exc.value.line, exc.value.col) == (1, 15)
    with pytest.raises(DuplicateDeclaration):
        parse_quiver_file("vertices: u v\narrow x: u -> v\narrow x: v -> u\n")


@pytest.mark.parametrize("text,line,col", [
    ("vertices u v\n", 1, 10),
    ("vertices: u\narrow x u -> u\n", 2, 9),
    ("vertices: u v\narrow x: u => v\n", 2, 12),
    ("vertices: u\nloop x\n", 2, 1),
    ("vertices: u\nquiver late\n", 2, 1),
    ("quiver q extra\n", 1, 10),
])
def test_syntax_errors(text, line, col):
    with pytest.raises(QuiverSyntaxError) as exc:
        parse_quiver_file(text)
    assert (exc.value.line, exc.value.col) == (line, col)


def test_non_utf8_file_reports_the_byte_position(tmp_path):
    path = tmp_path / "latin.quiver"
    path.write_bytes(b"quiver x\nvertices: v\xff\n")
    with pytest.raises(QuiverSyntaxError) as exc:
        load_presentation(path)
    assert (exc.value.line, exc.value.col) == (2, 12)
    assert "0xff" in str(exc.value)


def test_non_composable_relation_reports_its_line():
    text = "quiver bad\nvertices: u v w\narrow x: u -> v\narrow y: u -> w\nrel y * x\n"
    with pytest.raises(InvalidPresentation) as exc:
        load_presentation("bad.quiver", text=text)
    (violation,) = exc.value.violations
    assert violation.code == "non_composable_relation"
    assert violation.location == "line 5"


def test_not_gentle_fixture():
    with pytest.raises(InvalidPresentation) as exc:
        load_presentation(fixture_path("loop_no_rel"))
    assert [v.code for v in exc.value.violations] == ["unbounded_path"]


def test_render_round_trip(worked, signed, two_cycle):
    for p in (worked, signed, two_cycle):
        text = render_quiver_file(presentation_to_quiver_file(p))
        assert load_presentation("rendered", text=text) == p


def test_rendered_positions_match_the_text(worked):
    qf = presentation_to_quiver_file(worked)
    again = parse_quiver_file(render_quiver_file(qf))
    assert again.vertices == qf.vertices
    assert again.arrows == qf.arrows
    assert again.relations == qf.relations
