#!/usr/bin/env python3
"""
Tests for the JSON mirror and the dot export
"""

import json

import pytest

from gentle import __version__
from gentle.ag_invariant import compute_phi
from gentle.classification import ATilde, derived_equivalent
from gentle.dot_export import render_dot
from gentle.errors import InvalidPresentation
from gentle.serialization import presentation_from_json, serialize_json, threads_payload


def test_phi_json_is_compact(worked):
    phi, _ = compute_phi(worked)
    assert serialize_json(phi) == '{"phi":[[2,3],[2,4],[3,2]]}'


def test_indeterminate_verdict_json(twin_a, twin_b):
    verdict = derived_equivalent(twin_a, twin_b)
    assert serialize_json(verdict) == '{"verdict":"indeterminate","phi":[[3,5]],"cycles":2}'


def test_not_equivalent_verdict_lists_witnesses(worked, kronecker):
    data = json.loads(serialize_json(derived_equivalent(worked, kronecker)))
    assert data["verdict"] == "not_equivalent"
    assert data["witnesses"][0] == {"invariant": "#Q0", "left": "8", "right": "2"}
    assert data["phi_b"] == [[1, 1], [1, 1]]


def test_version_and_indent(a2):
    text = serialize_json(compute_phi(a2)[0], with_version=True, indent=2)
    data = json.loads(text)
    assert data == {"version": __version__, "phi": [[3, 1]]}
    assert "\n" in text


def test_indent_from_environment(a2, monkeypatch):
    monkeypatch.setenv("GENTLE_JSON_INDENT", "4")
    assert '\n    "phi"' in serialize_json(compute_phi(a2)[0])


def test_normal_form_json():
    assert serialize_json(ATilde(2, 1)) == '{"family":"ATilde","p":2,"q":1}'


def test_trace_json_names_threads(worked):
    _, trace = compute_phi(worked)
    data = json.loads(serialize_json(trace, worked))
    assert [run["pair"] for run in data["runs"]] == [[2, 3], [3, 2], [2, 4]]
    assert data["runs"][0]["permitted"][0]["name"] == "a9a3a2a1"
    assert data["cycles"] == []


def test_threads_payload(two_cycle):
    data = threads_payload(two_cycle)
    assert data["relation_cycles"] == [["g", "d"]]
    assert {t["name"] for t in data["forbidden"]} == {"p_u", "p_v"}


def test_presentation_round_trip(a2, worked):
    for p in (a2, worked):
        assert presentation_from_json(serialize_json(p)) == p


def test_presentation_from_json_errors():
    with pytest.raises(ValueError):
        presentation_from_json('{"vertices": ["u"]}')
    with pytest.raises(InvalidPresentation):
        presentation_from_json('{"vertices": ["v"], "arrows": [{"label": "a", "source": "v", "target": "v"}]}')


def test_dot_worked_example(worked):
    text = render_dot(worked)
    assert text.startswith('digraph "worked_example" {')
    assert text.count("[shape=circle]") == 1
    assert sum(1 for line in text.splitlines() if line.endswith("];") and "->" not in line and "label=" in line) == 8
    assert text.count("style=solid") == 9
    assert text.count("style=dotted") == 4


def test_dot_kronecker_keeps_parallel_edges(kronecker):
    text = render_dot(kronecker)
    assert text.count('"u" -> "v"') == 2
    assert "dotted" not in text
