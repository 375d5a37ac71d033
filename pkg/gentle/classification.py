#!/usr/bin/env python3
"""
Derived classification of gentle algebras with at most one cycle

Normal forms A_n, A~_{p,q} and Lambda(r,n,m), the clock condition on the
unique cycle, family constructors and the three-valued equivalence verdict.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Set, Union

from .ag_invariant import PhiInvariant, compute_phi, support
from .errors import BadParameters, InconsistentInvariant, NotOneCycle
from .quiver_core import GentlePresentation, cycle_number, presentation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class An:
    n: int

    def check(self):
        if self.n < 1:
            raise BadParameters(f"A_n needs n >= 1, got {self.n}")

    def __str__(self) -> str:
        return f"A({self.n})"


@dataclass(frozen=True)
class ATilde:
    p: int
    q: int

    def check(self):
        if not self.p >= self.q >= 1:
            raise BadParameters(f"A~_(p,q) needs p >= q >= 1, got p={self.p}, q={self.q}")

    def __str__(self) -> str:
        return f"ATilde({self.p},{self.q})"


@dataclass(frozen=True)
class Lambda:
    r: int
    n: int
    m: int

    def check(self):
        if not (self.n >= self.r >= 1 and self.m >= 0):
            raise BadParameters(f"Lambda(r,n,m) needs n >= r >= 1 and m >= 0, got {self.r},{self.n},{self.m}")

    def __str__(self) -> str:
        return f"Lambda({self.r},{self.n},{self.m})"


@dataclass(frozen=True)
class BeyondOneCycle:
    cycles: int

    def __str__(self) -> str:
        return f"BeyondOneCycle(c={self.cycles})"


FamilyDescriptor = Union[An, ATilde, Lambda]
NormalForm = Union[An, ATilde, Lambda, BeyondOneCycle]


def normal_form_phi(form: FamilyDescriptor) -> PhiInvariant:
    """Closed-form phi of a family representative"""
    form.check()
    if isinstance(form, An):
        return PhiInvariant.of([(form.n + 1, form.n - 1)])
    if isinstance(form, ATilde):
        return PhiInvariant.of([(form.p, form.p), (form.q, form.q)])
    if isinstance(form, Lambda):
        return PhiInvariant.of([(form.r + form.m, form.m), (form.n - form.r, form.n)])
    raise BadParameters(f"no closed form for {form}")


def build_family(desc: FamilyDescriptor) -> GentlePresentation:
    desc.check()
    if isinstance(desc, An):
        vertices = [str(i) for i in range(1, desc.n + 1)]
        arrows = [(f"a{i}", str(i), str(i + 1)) for i in range(1, desc.n)]
        return presentation(vertices, arrows, name=f"A{desc.n}")

    if isinstance(desc, ATilde):
        p, q = desc.p, desc.q
        vertices = [str(i) for i in range(p + q)]
        arrows = [(f"a{i}", str(i - 1), str(i)) for i in range(1, p + 1)]
        lower = ["0"] + [str(v) for v in range(p + 1, p + q)] + [str(p)]
        arrows += [(f"b{k}", lower[k - 1], lower[k]) for k in range(1, q + 1)]
        return presentation(vertices, arrows, name=f"ATilde{p}_{q}")

    r, n, m = desc.r, desc.n, desc.m
    vertices = [f"c{i}" for i in range(n)] + [f"t{k}" for k in range(1, m + 1)]
    arrows = [(f"a{i}", f"c{i}", f"c{(i + 1) % n}") for i in range(n)]
    tail = ["c0"] + [f"t{k}" for k in range(1, m + 1)]
    arrows += [(f"b{k}", tail[k], tail[k - 1]) for k in range(1, m + 1)]
    # a0*a(n-1), a(n-1)*a(n-2), ... going backwards around the cycle
    relations = [(f"a{(n - k) % n}", f"a{n - k - 1}") for k in range(r)]
    return presentation(vertices, arrows, relations, name=f"Lambda{r}_{n}_{m}")


class ClockCount(NamedTuple):
    """Relations on the unique cycle, split by direction under the canonical traversal"""
    clockwise: int
    anticlockwise: int

    @property
    def difference(self) -> int:
        return abs(self.clockwise - self.anticlockwise)


def _cycle_arrows(p: GentlePresentation) -> Set[int]:
    """Arrows left after repeatedly pruning vertices of undirected degree at most one"""
    q = p.quiver
    alive = set(range(q.num_arrows))
    degree: Dict[int, int] = {v: 0 for v in range(q.num_vertices)}
    for a in q.arrows:
        degree[a.source] += 1
        degree[a.target] += 1

    leaves = [v for v, d in degree.items() if d <= 1]
    removed = set()
    while leaves:
        v = leaves.pop()
        if v in removed:
            continue
        removed.add(v)
        for a in list(q.in_arrows(v)) + list(q.out_arrows(v)):
            if a not in alive:
                continue
            alive.discard(a)
            for w in (q.source(a), q.target(a)):
                degree[w] -= 1
                if w not in removed and degree[w] <= 1:
                    leaves.append(w)
    return alive


def clock_condition(p: GentlePresentation) -> ClockCount:
    """
    Count clockwise and anticlockwise relations on the only cycle

    The traversal starts at the least cycle vertex and leaves it along the
    least incident cycle arrow; a relation is clockwise when both of its
    arrows are walked forward.
    """
    c = cycle_number(p)
    if c != 1:
        raise NotOneCycle(c)
    q = p.quiver
    on_cycle = _cycle_arrows(p)
    start = min(v for a in on_cycle for v in (q.source(a), q.target(a)))

    forward: Dict[int, bool] = {}
    here, previous = start, None
    while len(forward) < len(on_cycle):
        incident = sorted(a for a in on_cycle if a != previous and a not in forward
                          and here in (q.source(a), q.target(a)))
        if not incident:
            raise InconsistentInvariant(f"cycle walk stuck at {q.vertex_label(here)}")
        a = incident[0]
        forward[a] = q.source(a) == here
        here = q.target(a) if forward[a] else q.source(a)
        previous = a

    clockwise = anticlockwise = 0
    for rel in p.relations:
        if rel.first in on_cycle and rel.second in on_cycle:
            if forward[rel.first] and forward[rel.second]:
                clockwise += 1
            elif not forward[rel.first] and not forward[rel.second]:
                anticlockwise += 1
            else:
                raise InconsistentInvariant("relation on the cycle mixes traversal directions")
    return ClockCount(clockwise, anticlockwise)


def classify(p: GentlePresentation) -> NormalForm:
    c = cycle_number(p)
    if c >= 2:
        phi, _ = compute_phi(p)
        logger.debug(f"{p.name}: {c} cycles, #Supp(phi) = {len(support(phi))}")
        return BeyondOneCycle(c)

    phi, _ = compute_phi(p)
    if c == 0:
        form = An(p.num_vertices)
        if phi != normal_form_phi(form):
            raise InconsistentInvariant(f"tree {p.name} has phi {phi}, expected {normal_form_phi(form)}")
        return form

    clock = clock_condition(p)
    pairs = list(phi.pairs)
    if len(pairs) != 2:
        raise InconsistentInvariant(f"one-cycle algebra {p.name} has phi {phi} with {len(pairs)} pairs")

    if all(n == m for n, m in pairs):
        if clock.difference != 0:
            raise InconsistentInvariant(f"{p.name}: phi {phi} is of type A~ but the clock difference is {clock.difference}")
        big, small = max(pairs[0][0], pairs[1][0]), min(pairs[0][0], pairs[1][0])
        return ATilde(big, small)

    heavy = [pair for pair in pairs if pair[0] > pair[1]]
    light = [pair for pair in pairs if pair[0] < pair[1]]
    if len(heavy) != 1 or len(light) != 1:
        raise InconsistentInvariant(f"{p.name}: phi {phi} matches no one-cycle normal form")
    (rm, m), (nr, n) = heavy[0], light[0]
    r = rm - m
    if n - nr != r:
        raise InconsistentInvariant(f"{p.name}: phi {phi} gives r = {r} and r = {n - nr}")
    if clock.difference != r:
        raise InconsistentInvariant(f"{p.name}: phi gives r = {r} but the clock difference is {clock.difference}")
    return Lambda(r, n, m)


class Verdict(Enum):
    EQUIVALENT = "equivalent"
    NOT_EQUIVALENT = "not_equivalent"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class Witness:
    invariant: str
    left: str
    right: str

    def describe(self) -> str:
        return f"{self.invariant}: {self.left} != {self.right}"


@dataclass
class EquivVerdict:
    verdict: Verdict
    phi_a: PhiInvariant
    phi_b: PhiInvariant
    cycles_a: int
    cycles_b: int
    witnesses: List[Witness] = field(default_factory=list)

    @property
    def witness(self) -> Optional[Witness]:
        return self.witnesses[0] if self.witnesses else None


def derived_equivalent(pa: GentlePresentation, pb: GentlePresentation) -> EquivVerdict:
    """
    Compare the derived invariants of two gentle algebras

    Equal invariants settle the question only when both quivers have at
    most one cycle; beyond that the answer is Indeterminate.
    """
    phi_a, _ = compute_phi(pa)
    phi_b, _ = compute_phi(pb)
    ca, cb = cycle_number(pa), cycle_number(pb)

    witnesses = []
    for name, left, right in (
        ("#Q0", pa.num_vertices, pb.num_vertices),
        ("#Q1", pa.num_arrows, pb.num_arrows),
        ("c(Q)", ca, cb),
        ("phi", phi_a, phi_b),
    ):
        if left != right:
            witnesses.append(Witness(name, str(left), str(right)))

    if witnesses:
        verdict = Verdict.NOT_EQUIVALENT
    elif ca <= 1 and cb <= 1:
        verdict = Verdict.EQUIVALENT
    else:
        verdict = Verdict.INDETERMINATE
    logger.debug(f"{pa.name} vs {pb.name}: {verdict.value}")
    return EquivVerdict(verdict, phi_a, phi_b, ca, cb, witnesses)
