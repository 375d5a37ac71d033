#!/usr/bin/env python3
"""
Quivers with length-2 monomial relations
Builds validated gentle presentations and computes the cycle number c(Q)
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from .errors import InvalidPresentation, Violation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Arrow:
    id: int
    label: str
    source: int
    target: int


@dataclass(frozen=True)
class Relation:
    """The path `first` then `second` is zero (written second*first)"""
    second: int
    first: int


@dataclass(frozen=True)
class Quiver:
    """Vertex and arrow ids are dense and follow input order"""
    vertex_labels: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]
    name: str = "quiver"

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_labels)

    @property
    def num_arrows(self) -> int:
        return len(self.arrows)

    @cached_property
    def _out(self) -> Tuple[Tuple[int, ...], ...]:
        out: List[List[int]] = [[] for _ in self.vertex_labels]
        for a in self.arrows:
            out[a.source].append(a.id)
        return tuple(tuple(x) for x in out)

    @cached_property
    def _in(self) -> Tuple[Tuple[int, ...], ...]:
        inc: List[List[int]] = [[] for _ in self.vertex_labels]
        for a in self.arrows:
            inc[a.target].append(a.id)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def _vertex_index(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.vertex_labels)}

    @cached_property
    def _arrow_index(self) -> Dict[str, int]:
        return {a.label: a.id for a in self.arrows}

    def out_arrows(self, v: int) -> Tuple[int, ...]:
        return self._out[v]

    def in_arrows(self, v: int) -> Tuple[int, ...]:
        return self._in[v]

    def vertex_id(self, label: str) -> int:
        return self._vertex_index[label]

    def arrow_id(self, label: str) -> int:
        return self._arrow_index[label]

    def source(self, a: int) -> int:
        return self.arrows[a].source

    def target(self, a: int) -> int:
        return self.arrows[a].target

    def arrow_label(self, a: int) -> str:
        return self.arrows[a].label

    def vertex_label(self, v: int) -> str:
        return self.vertex_labels[v]


@dataclass
class RawQuiver:
    """Unchecked quiver description as it comes out of a file or a generator"""
    vertices: List[str]
    arrows: List[Tuple[str, str, str]]
    relations: List[Tuple[str, str]]
    name: str = "quiver"
    arrow_locations: Optional[List[str]] = None
    relation_locations: Optional[List[str]] = None


@dataclass(frozen=True)
class PresentationCandidate:
    """Structurally sound quiver plus relations, not yet checked for gentleness"""
    quiver: Quiver
    relations: FrozenSet[Relation]


@dataclass(frozen=True)
class GentlePresentation:
    quiver: Quiver
    relations: FrozenSet[Relation]
    perm_succ: Mapping[int, int] = field(compare=False, hash=False, repr=False)
    perm_pred: Mapping[int, int] = field(compare=False, hash=False, repr=False)
    forb_succ: Mapping[int, int] = field(compare=False, hash=False, repr=False)
    forb_pred: Mapping[int, int] = field(compare=False, hash=False, repr=False)

    @property
    def name(self) -> str:
        return self.quiver.name

    @property
    def num_vertices(self) -> int:
        return self.quiver.num_vertices

    @property
    def num_arrows(self) -> int:
        return self.quiver.num_arrows

    def is_relation(self, second: int, first: int) -> bool:
        return Relation(second, first) in self.relations

    def sorted_relations(self) -> List[Relation]:
        return sorted(self.relations, key=lambda r: (r.first, r.second))

    def is_isolated_point(self) -> bool:
        return self.num_vertices == 1 and self.num_arrows == 0


PresentationLike = Union[PresentationCandidate, GentlePresentation]


def _composition_maps(quiver: Quiver, relations: FrozenSet[Relation]):
    """For every arrow, the arrows composable after it split by relation membership"""
    perm: Dict[int, List[int]] = {a.id: [] for a in quiver.arrows}
    forb: Dict[int, List[int]] = {a.id: [] for a in quiver.arrows}
    for beta in quiver.arrows:
        for gamma in quiver.out_arrows(beta.target):
            if Relation(gamma, beta.id) in relations:
                forb[beta.id].append(gamma)
            else:
                perm[beta.id].append(gamma)
    return perm, forb


def validate_gentle(p: PresentationLike) -> List[Violation]:
    """
    Check the gentle conditions plus connectivity on a structurally sound presentation

    Returns one Violation per failed condition with its witness; an empty
    list means the presentation is gentle, connected and finite-dimensional.
    """
    quiver, relations = p.quiver, p.relations
    violations: List[Violation] = []
    vl, al = quiver.vertex_label, quiver.arrow_label

    for v in range(quiver.num_vertices):
        n_out, n_in = len(quiver.out_arrows(v)), len(quiver.in_arrows(v))
        if n_out > 2 or n_in > 2:
            violations.append(Violation(
                "degree_bound",
                f"vertex {vl(v)} has {n_out} outgoing and {n_in} incoming arrows (at most 2 each)",
                vertex=vl(v),
            ))

    perm, forb = _composition_maps(quiver, relations)
    perm_in: Dict[int, List[int]] = {a.id: [] for a in quiver.arrows}
    forb_in: Dict[int, List[int]] = {a.id: [] for a in quiver.arrows}
    for beta, gammas in perm.items():
        for gamma in gammas:
            perm_in[gamma].append(beta)
    for beta, gammas in forb.items():
        for gamma in gammas:
            forb_in[gamma].append(beta)

    for a in quiver.arrows:
        if len(perm[a.id]) > 1:
            violations.append(Violation(
                "permitted_branching",
                f"arrow {a.label} continues without relation into "
                + ", ".join(al(g) for g in perm[a.id]),
                arrow=a.label,
            ))
        if len(perm_in[a.id]) > 1:
            violations.append(Violation(
                "permitted_branching",
                f"arrow {a.label} is reached without relation from "
                + ", ".join(al(b) for b in perm_in[a.id]),
                arrow=a.label,
            ))
        if len(forb[a.id]) > 1:
            violations.append(Violation(
                "relation_branching",
                f"arrow {a.label} starts relations with "
                + ", ".join(al(g) for g in forb[a.id]),
                arrow=a.label,
            ))
        if len(forb_in[a.id]) > 1:
            violations.append(Violation(
                "relation_branching",
                f"arrow {a.label} ends relations with "
                + ", ".join(al(b) for b in forb_in[a.id]),
                arrow=a.label,
            ))

    # a cycle of relation-free compositions gives paths of unbounded length
    follow = nx.DiGraph()
    follow.add_nodes_from(a.id for a in quiver.arrows)
    follow.add_edges_from((b, g) for b, gs in perm.items() for g in gs)
    for component in sorted(nx.strongly_connected_components(follow), key=min):
        looped = len(component) > 1 or follow.has_edge(min(component), min(component))
        if not looped:
            continue
        cycle = nx.find_cycle(follow.subgraph(component), source=min(component))
        path = " -> ".join(al(b) for b, _ in cycle) + f" -> {al(cycle[0][0])}"
        violations.append(Violation(
            "unbounded_path",
            f"relation-free cycle {path} gives arbitrarily long paths",
            arrow=al(min(component)),
        ))

    if quiver.num_vertices > 0:
        underlying = nx.MultiGraph()
        underlying.add_nodes_from(range(quiver.num_vertices))
        underlying.add_edges_from((a.source, a.target) for a in quiver.arrows)
        if not nx.is_connected(underlying):
            reached = nx.node_connected_component(underlying, 0)
            stray = min(v for v in range(quiver.num_vertices) if v not in reached)
            violations.append(Violation(
                "disconnected",
                f"vertex {vl(stray)} is not connected to {vl(0)}",
                vertex=vl(stray),
            ))

    return violations


def _structural_check(raw: RawQuiver):
    violations: List[Violation] = []
    if not raw.vertices:
        violations.append(Violation("empty_quiver", "a quiver needs at least one vertex"))

    vertex_index: Dict[str, int] = {}
    for label in raw.vertices:
        if label in vertex_index:
            violations.append(Violation("duplicate_label", f"vertex {label} declared twice", vertex=label))
        else:
            vertex_index[label] = len(vertex_index)

    arrows: List[Arrow] = []
    arrow_index: Dict[str, int] = {}
    for pos, (label, src, tgt) in enumerate(raw.arrows):
        where = raw.arrow_locations[pos] if raw.arrow_locations else None
        if label in arrow_index:
            violations.append(Violation("duplicate_label", f"arrow {label} declared twice", arrow=label, location=where))
            continue
        missing = [x for x in (src, tgt) if x not in vertex_index]
        for x in missing:
            violations.append(Violation(
                "unknown_endpoint", f"arrow {label} uses undeclared vertex {x}", arrow=label, location=where))
        if missing:
            continue
        arrow_index[label] = len(arrows)
        arrows.append(Arrow(len(arrows), label, vertex_index[src], vertex_index[tgt]))

    relations: List[Relation] = []
    seen = set()
    for pos, (second, first) in enumerate(raw.relations):
        where = raw.relation_locations[pos] if raw.relation_locations else None
        unknown = [x for x in (second, first) if x not in arrow_index]
        for x in unknown:
            violations.append(Violation(
                "unknown_arrow", f"relation {second}*{first} uses undeclared arrow {x}", relation=pos, location=where))
        if unknown:
            continue
        g, b = arrow_index[second], arrow_index[first]
        if arrows[g].source != arrows[b].target:
            violations.append(Violation(
                "non_composable_relation",
                f"relation {second}*{first}: {first} ends at {raw.vertices[arrows[b].target]} "
                f"but {second} starts at {raw.vertices[arrows[g].source]}",
                relation=pos, location=where,
            ))
            continue
        rel = Relation(g, b)
        if rel in seen:
            logger.warning(f"Relation {second}*{first} listed twice; keeping one copy")
            continue
        seen.add(rel)
        relations.append(rel)

    quiver = Quiver(tuple(vertex_index), tuple(arrows), raw.name)
    return quiver, frozenset(relations), violations


def _injective(pairs: Mapping[int, List[int]]) -> Dict[int, int]:
    return {k: v[0] for k, v in pairs.items() if v}


def build_presentation(raw: RawQuiver) -> GentlePresentation:
    """
    Build a validated presentation from a raw description

    Raises InvalidPresentation carrying every violation found; never
    returns a partially valid value.
    """
    quiver, relations, violations = _structural_check(raw)
    if violations:
        raise InvalidPresentation(violations)

    violations = validate_gentle(PresentationCandidate(quiver, relations))
    if violations:
        logger.info(f"Presentation {raw.name} rejected with {len(violations)} violation(s)")
        raise InvalidPresentation(violations)

    perm, forb = _composition_maps(quiver, relations)
    perm_succ = _injective(perm)
    forb_succ = _injective(forb)
    p = GentlePresentation(
        quiver=quiver,
        relations=relations,
        perm_succ=MappingProxyType(perm_succ),
        perm_pred=MappingProxyType({g: b for b, g in perm_succ.items()}),
        forb_succ=MappingProxyType(forb_succ),
        forb_pred=MappingProxyType({g: b for b, g in forb_succ.items()}),
    )
    logger.debug(
        f"Built presentation {quiver.name}: {quiver.num_vertices} vertices, "
        f"{quiver.num_arrows} arrows, {len(relations)} relations"
    )
    return p


def presentation(vertices: Sequence[str], arrows: Sequence[Tuple[str, str, str]],
                 relations: Sequence[Tuple[str, str]] = (), name: str = "quiver") -> GentlePresentation:
    """Shorthand for build_presentation(RawQuiver(...))"""
    return build_presentation(RawQuiver(list(vertices), list(arrows), list(relations), name))


def to_raw(p: GentlePresentation) -> RawQuiver:
    q = p.quiver
    return RawQuiver(
        vertices=list(q.vertex_labels),
        arrows=[(a.label, q.vertex_label(a.source), q.vertex_label(a.target)) for a in q.arrows],
        relations=[(q.arrow_label(r.second), q.arrow_label(r.first)) for r in p.sorted_relations()],
        name=q.name,
    )


def cycle_number(p: PresentationLike) -> int:
    """c(Q) = #Q1 - #Q0 + 1 for a connected quiver"""
    return p.quiver.num_arrows - p.quiver.num_vertices + 1
