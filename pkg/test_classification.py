#!/usr/bin/env python3
"""
Tests for normal forms, the clock condition and the equivalence verdict
"""

import pytest

from gentle.ag_invariant import PhiInvariant, compute_phi
from gentle.classification import (
    An,
    ATilde,
    BeyondOneCycle,
    Lambda,
    Verdict,
    build_family,
    classify,
    clock_condition,
    derived_equivalent,
    normal_form_phi,
)
from gentle.errors import BadParameters, NotOneCycle
from gentle.generator import GeneratorParams, random_gentle
from gentle.quiver_core import cycle_number, presentation


def test_an_family():
    p = build_family(An(2))
    assert (p.num_vertices, p.num_arrows) == (2, 1)
    assert classify(build_family(An(1))) == An(1)


def test_gentle_tree_classifies_by_vertex_count():
    p = random_gentle(GeneratorParams(4, 0, seed=11))
    assert classify(p) == An(4)


def test_atilde_1_1_is_kronecker(kronecker):
    p = build_family(ATilde(1, 1))
    assert (p.num_vertices, p.num_arrows, len(p.relations)) == (2, 2, 0)
    assert p.quiver.source(0) == p.quiver.source(1)
    assert p.quiver.target(0) == p.quiver.target(1)
    assert classify(kronecker) == ATilde(1, 1)


def test_lambda_1_2_0():
    p = build_family(Lambda(1, 2, 0))
    assert len(p.relations) == 1
    assert compute_phi(p)[0] == PhiInvariant.of([(1, 0), (1, 2)])
    assert clock_condition(p).difference == 1


def test_lambda_2_3_1():
    p = build_family(Lambda(2, 3, 1))
    assert compute_phi(p)[0] == PhiInvariant.of([(1, 3), (3, 1)])
    assert classify(p) == Lambda(2, 3, 1)


def test_clock_condition_atilde_2_1():
    p = build_family(ATilde(2, 1))
    assert clock_condition(p) == (0, 0)
    assert compute_phi(p)[0] == PhiInvariant.of([(1, 1), (2, 2)])


def test_clock_condition_needs_one_cycle():
    with pytest.raises(NotOneCycle):
        clock_condition(build_family(An(3)))


def test_clock_ignores_relations_off_the_cycle():
    # oriented triangle with one relation on it, plus a relation into a tail
    p = presentation(
        ["0", "1", "2", "3", "4"],
        [("a", "0", "1"), ("b", "1", "2"), ("c", "2", "0"), ("t", "3", "0"), ("u", "1", "4")],
        [("a", "c"), ("u", "a")],
    )
    assert cycle_number(p) == 1
    assert clock_condition(p).difference == 1


@pytest.mark.parametrize("p,q", [(p, q) for p in range(1, 12) for q in range(1, p + 1) if p + q <= 12])
def test_atilde_round_trip(p, q):
    algebra = build_family(ATilde(p, q))
    assert cycle_number(algebra) == 1
    assert compute_phi(algebra)[0] == normal_form_phi(ATilde(p, q))
    assert classify(algebra) == ATilde(p, q)


@pytest.mark.parametrize("r,n,m", [(r, n, m) for n in range(1, 9) for r in range(1, n + 1) for m in range(5)])
def test_lambda_round_trip(r, n, m):
    algebra = build_family(Lambda(r, n, m))
    assert compute_phi(algebra)[0] == normal_form_phi(Lambda(r, n, m))
    assert classify(algebra) == Lambda(r, n, m)
    assert clock_condition(algebra).difference == r


@pytest.mark.parametrize("n", range(1, 13))
def test_an_round_trip(n):
    assert classify(build_family(An(n))) == An(n)
    assert compute_phi(build_family(An(n)))[0] == PhiInvariant.of([(n + 1, n - 1)])


@pytest.mark.parametrize("bad", [An(0), ATilde(1, 2), ATilde(0, 0), Lambda(0, 2, 0), Lambda(3, 2, 0), Lambda(1, 2, -1)])
def test_bad_parameters(bad):
    with pytest.raises(BadParameters):
        build_family(bad)


def test_beyond_one_cycle(twin_a):
    assert classify(twin_a) == BeyondOneCycle(2)


def test_twin_pair_is_indeterminate(twin_a, twin_b):
    result = derived_equivalent(twin_a, twin_b)
    assert result.verdict is Verdict.INDETERMINATE
    assert result.phi_a == result.phi_b == PhiInvariant.of([(3, 5)])
    assert result.cycles_a == result.cycles_b == 2


def test_tree_against_linear_a3():
    tree = presentation(["x", "y", "z"], [("a", "x", "y"), ("b", "z", "y")])
    result = derived_equivalent(tree, build_family(An(3)))
    assert result.verdict is Verdict.EQUIVALENT


def test_a3_against_a4():
    result = derived_equivalent(build_family(An(3)), build_family(An(4)))
    assert result.verdict is Verdict.NOT_EQUIVALENT
    names = [w.invariant for w in result.witnesses]
    assert "phi" in names and "#Q0" in names
    phi_witness = next(w for w in result.witnesses if w.invariant == "phi")
    assert (phi_witness.left, phi_witness.right) == ("[(4,2)]", "[(5,3)]")


def test_verdict_is_reflexive_and_symmetric(worked, kronecker):
    assert derived_equivalent(kronecker, kronecker).verdict is Verdict.EQUIVALENT
    assert derived_equivalent(worked, worked).verdict is Verdict.INDETERMINATE
    forward = derived_equivalent(worked, kronecker)
    backward = derived_equivalent(kronecker, worked)
    assert forward.verdict is backward.verdict is Verdict.NOT_EQUIVALENT
    assert [w.invariant for w in forward.witnesses] == [w.invariant for w in backward.witnesses]
