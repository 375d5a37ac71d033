#!/usr/bin/env python3
"""
Tests for presentation building and the gentle conditions
"""

import pytest

from gentle.errors import InvalidPresentation
from gentle.quiver_core import (
    Arrow,
    PresentationCandidate,
    Quiver,
    Relation,
    RawQuiver,
    build_presentation,
    cycle_number,
    presentation,
    to_raw,
    validate_gentle,
)


def codes(exc_info):
    return [v.code for v in exc_info.value.violations]


def test_builds_worked_example(worked):
    assert worked.num_vertices == 8
    assert worked.num_arrows == 9
    assert len(worked.relations) == 4
    assert cycle_number(worked) == 2


def test_cycle_numbers(a2, kronecker, loop_rel, point, twin_a, twin_b):
    assert cycle_number(a2) == 0
    assert cycle_number(point) == 0
    assert cycle_number(kronecker) == 1
    assert cycle_number(loop_rel) == 1
    assert cycle_number(twin_a) == 2
    assert cycle_number(twin_b) == 2


def test_perm_and_forb_successors(worked):
    q = worked.quiver
    a = q.arrow_id
    assert worked.perm_succ[a("a1")] == a("a2")
    assert worked.forb_succ[a("a1")] == a("a8")
    assert a("a9") not in worked.perm_succ
    assert worked.perm_pred[a("a2")] == a("a1")


def test_empty_quiver_rejected():
    with pytest.raises(InvalidPresentation) as exc:
        build_presentation(RawQuiver([], [], []))
    assert codes(exc) == ["empty_quiver"]


def test_structural_violations_collected_together():
    raw = RawQuiver(
        vertices=["u", "v", "u"],
        arrows=[("a", "u", "w"), ("b", "u", "v"), ("b", "v", "u")],
        relations=[],
    )
    with pytest.raises(InvalidPresentation) as exc:
        build_presentation(raw)
    found = codes(exc)
    assert found.count("duplicate_label") == 2
    assert "unknown_endpoint" in found


def test_non_composable_relation_keeps_location():
    raw = RawQuiver(
        vertices=["u", "v", "w"],
        arrows=[("a", "u", "v"), ("b", "u", "w")],
        relations=[("b", "a")],
        relation_locations=["line 7"],
    )
    with pytest.raises(InvalidPresentation) as exc:
        build_presentation(raw)
    (violation,) = exc.value.violations
    assert violation.code == "non_composable_relation"
    assert violation.location == "line 7"


def test_loop_without_relation_is_unbounded():
    with pytest.raises(InvalidPresentation) as exc:
        presentation(["v"], [("a", "v", "v")])
    assert codes(exc) == ["unbounded_path"]


def test_oriented_cycle_with_one_relation_is_gentle():
    p = presentation(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")], [("a", "c")])
    assert cycle_number(p) == 1


def test_degree_bound():
    with pytest.raises(InvalidPresentation) as exc:
        presentation(["c", "x", "y", "z"], [("a", "c", "x"), ("b", "c", "y"), ("d", "c", "z")])
    assert "degree_bound" in codes(exc)


def test_permitted_branching():
    # a can continue into b or c without a relation
    with pytest.raises(InvalidPresentation) as exc:
        presentation(["u", "v", "x", "y"], [("a", "u", "v"), ("b", "v", "x"), ("c", "v", "y")])
    assert "permitted_branching" in codes(exc)


def test_relation_branching():
    with pytest.raises(InvalidPresentation) as exc:
        presentation(["u", "v", "x", "y"], [("a", "u", "v"), ("b", "v", "x"), ("c", "v", "y")],
                     [("b", "a"), ("c", "a")])
    assert "relation_branching" in codes(exc)


def test_disconnected():
    with pytest.raises(InvalidPresentation) as exc:
        presentation(["u", "v", "w"], [("a", "u", "v")])
    (violation,) = exc.value.violations
    assert violation.code == "disconnected"
    assert violation.vertex == "w"


def test_validate_gentle_reports_without_raising():
    loop = Quiver(("v",), (Arrow(0, "a", 0, 0),), "loop")
    report = validate_gentle(PresentationCandidate(loop, frozenset()))
    assert [v.code for v in report] == ["unbounded_path"]
    assert validate_gentle(PresentationCandidate(loop, frozenset({Relation(0, 0)}))) == []


def test_duplicate_relation_collapses():
    p = presentation(["u", "v", "w"], [("a", "u", "v"), ("b", "v", "w")], [("b", "a"), ("b", "a")])
    assert len(p.relations) == 1


def test_to_raw_round_trip(worked):
    assert build_presentation(to_raw(worked)) == worked
