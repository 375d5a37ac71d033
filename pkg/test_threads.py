#!/usr/bin/env python3
"""
Tests for thread enumeration, signs and the end/start matching
"""

import pytest

from gentle.errors import IsolatedVertex
from gentle.generator import generate_corpus
from gentle.threads import (
    PLUS,
    MINUS,
    SignAssignment,
    Thread,
    ThreadKind,
    assign_signs,
    check_signs,
    forbidden_threads,
    match_end,
    match_start,
    permitted_threads,
    thread_label,
    thread_signs,
)


def labels(p, threads):
    return {thread_label(p, t) for t in threads}


def by_label(p, threads, name):
    (found,) = [t for t in threads if thread_label(p, t) == name]
    return found


SIGNED_SIGMA_PLUS = {"a1", "a4", "a6", "a8", "a9", "a10"}
SIGNED_EPS_PLUS = {"a3", "a7", "a8"}


def signed_signs(p):
    names = [a.label for a in p.quiver.arrows]
    return SignAssignment.from_labels(
        p,
        sigma={n: PLUS if n in SIGNED_SIGMA_PLUS else MINUS for n in names},
        eps={n: PLUS if n in SIGNED_EPS_PLUS else MINUS for n in names},
    )


def test_signed_permitted_threads(signed):
    assert labels(signed, permitted_threads(signed)) == {
        "a1", "a4a10a9a2", "a6a5a3", "a8", "a7", "1_v1", "1_v7", "1_v5",
    }


def test_point_has_two_tagged_trivial_threads(point):
    threads = permitted_threads(point)
    assert [t.orient for t in threads] == [PLUS, MINUS]
    assert all(t.is_trivial and t.at == 0 for t in threads)


def test_twin_a_permitted_threads(twin_a):
    assert labels(twin_a, permitted_threads(twin_a)) == {"a4a1", "a3a2", "a5"}


def test_every_arrow_in_one_permitted_thread(worked):
    bodies = [a for t in permitted_threads(worked) for a in t.body]
    assert sorted(bodies) == list(range(worked.num_arrows))


def test_worked_forbidden_threads(worked):
    forbidden, cycles = forbidden_threads(worked)
    assert labels(worked, forbidden) == {"a9", "a3", "a8a1a4a2", "a7", "a6a5", "p_b", "p_d"}
    assert cycles == ()


def test_a2_forbidden_threads(a2):
    forbidden, _ = forbidden_threads(a2)
    assert labels(a2, forbidden) == {"a", "p_v1", "p_v2"}


def test_two_cycle_forbidden_threads(two_cycle):
    forbidden, cycles = forbidden_threads(two_cycle)
    assert labels(two_cycle, forbidden) == {"p_u", "p_v"}
    assert cycles == ((0, 1),)


def test_forbidden_partition(worked, two_cycle, loop_rel):
    for p in (worked, two_cycle, loop_rel):
        forbidden, cycles = forbidden_threads(p)
        total = sum(len(t) for t in forbidden) + sum(len(c) for c in cycles)
        assert total == p.num_arrows


def test_signed_reference_signs_are_valid(signed):
    assert check_signs(signed, signed_signs(signed)) == []


def test_check_signs_flags_a_clash(kronecker):
    bad = SignAssignment.from_labels(kronecker, sigma={"a": PLUS, "b": PLUS}, eps={"a": PLUS, "b": MINUS})
    report = check_signs(kronecker, bad)
    assert [v.code for v in report] == ["sign_shared_source"]


def test_assign_signs_a2_default(a2):
    sa = assign_signs(a2)
    assert sa.sigma[0] == PLUS
    assert sa.eps[0] == PLUS


def test_assign_signs_kronecker_forced(kronecker):
    sa = assign_signs(kronecker)
    assert sa.sigma[0] == -sa.sigma[1]
    assert sa.eps[0] == -sa.eps[1]
    assert check_signs(kronecker, sa) == []


def test_thread_signs_from_reference_values(signed):
    sa = signed_signs(signed)
    threads = permitted_threads(signed)
    assert thread_signs(signed, sa, by_label(signed, threads, "a6a5a3")) == (MINUS, MINUS)
    assert thread_signs(signed, sa, by_label(signed, threads, "a8")) == (PLUS, PLUS)


def test_thread_signs_trivial_at_sink(a2):
    sa = assign_signs(a2)
    (h_v2,) = [t for t in permitted_threads(a2) if t.is_trivial and t.at == 1]
    assert thread_signs(a2, sa, h_v2) == (sa.eps[0], -sa.eps[0])


def test_thread_signs_isolated_vertex(point):
    sa = assign_signs(point)
    with pytest.raises(IsolatedVertex):
        thread_signs(point, sa, permitted_threads(point)[0])


def test_match_end_examples(worked, a2):
    permitted = permitted_threads(worked)
    assert thread_label(worked, match_end(worked, by_label(worked, permitted, "a7a6"))) == "a9"
    assert thread_label(worked, match_end(worked, by_label(worked, permitted, "1_g"))) == "a3"
    alpha = by_label(a2, permitted_threads(a2), "a")
    assert thread_label(a2, match_end(a2, alpha)) == "p_v2"


def test_match_start_examples(worked, a2):
    forbidden, _ = forbidden_threads(worked)
    assert thread_label(worked, match_start(worked, by_label(worked, forbidden, "a3"))) == "a5a4"
    assert thread_label(worked, match_start(worked, by_label(worked, forbidden, "a8a1a4a2"))) == "a8"
    p_v1 = by_label(a2, forbidden_threads(a2)[0], "p_v1")
    assert thread_label(a2, match_start(a2, p_v1)) == "a"


def test_isolated_vertex_matching_flips_tag(point):
    h_plus = Thread(ThreadKind.PERMITTED, at=0, orient=PLUS)
    partner = match_end(point, h_plus)
    assert partner.kind is ThreadKind.FORBIDDEN and partner.orient == MINUS
    assert match_start(point, partner).orient == MINUS


@pytest.fixture(scope="module")
def corpus():
    return list(generate_corpus(120, max_vertices=9, max_cycles=3, seed=20240901))


@pytest.mark.slow
def test_matching_is_a_permutation(corpus):
    for p in corpus:
        threads = permitted_threads(p)
        images = [match_start(p, match_end(p, h)) for h in threads]
        assert sorted(images, key=Thread.sort_key) == sorted(threads, key=Thread.sort_key), p.name


@pytest.mark.slow
def test_sign_layer_coherence(corpus):
    for p in corpus:
        if p.is_isolated_point():
            continue
        sa = assign_signs(p)
        assert check_signs(p, sa) == [], p.name
        for h in permitted_threads(p):
            f = match_end(p, h)
            if not f.is_trivial:
                assert thread_signs(p, sa, f)[1] == -thread_signs(p, sa, h)[1], p.name
        for f in forbidden_threads(p)[0]:
            if not f.is_trivial:
                h = match_start(p, f)
                assert thread_signs(p, sa, h)[0] == -thread_signs(p, sa, f)[0], p.name
