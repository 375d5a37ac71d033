#!/usr/bin/env python3
"""
Permitted and forbidden threads of a gentle presentation

Enumerates the threads, computes a sigma/epsilon sign assignment by parity
propagation, and pairs threads through the structural end/start matching
used by the invariant algorithm.
"""

import logging
import threading
import weakref
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Optional, Tuple

from .errors import InconsistentSigns, IsolatedVertex, MatchFailure, Violation
from .quiver_core import GentlePresentation

logger = logging.getLogger(__name__)

PLUS, MINUS = 1, -1


class ThreadKind(Enum):
    PERMITTED = "permitted"
    FORBIDDEN = "forbidden"


@dataclass(frozen=True)
class Thread:
    """
    A maximal thread, stored as its arrows in path order

    `body` lists the first arrow first, so the composition reads
    body[-1] ... body[0]. Trivial threads have an empty body and a vertex
    in `at`; only the one-vertex algebra uses `orient`.
    """
    kind: ThreadKind
    body: Tuple[int, ...] = ()
    at: Optional[int] = None
    orient: Optional[int] = None

    @property
    def is_trivial(self) -> bool:
        return not self.body

    @property
    def first(self) -> int:
        return self.body[0]

    @property
    def last(self) -> int:
        return self.body[-1]

    def __len__(self) -> int:
        return len(self.body)

    def start(self, p: GentlePresentation) -> int:
        return self.at if self.is_trivial else p.quiver.source(self.first)

    def end(self, p: GentlePresentation) -> int:
        return self.at if self.is_trivial else p.quiver.target(self.last)

    def sort_key(self) -> Tuple[int, int, int]:
        if self.body:
            return (0, self.body[0], 0)
        return (1, self.at, 0 if self.orient in (None, PLUS) else 1)


def thread_label(p: GentlePresentation, t: Thread) -> str:
    """Composition-order name, e.g. 'a7a6' for a6 followed by a7"""
    q = p.quiver
    if t.is_trivial:
        tag = "" if t.orient is None else ("+" if t.orient == PLUS else "-")
        prefix = "1" if t.kind is ThreadKind.PERMITTED else "p"
        return f"{prefix}_{q.vertex_label(t.at)}{tag}"
    return "".join(q.arrow_label(a) for a in reversed(t.body))


def inverse_label(p: GentlePresentation, t: Thread) -> str:
    """Formal inverse of a thread, written the way the trace arrays show it"""
    if t.is_trivial:
        return "*"
    return " ".join(f"{p.quiver.arrow_label(a)}^-1" for a in t.body)


@dataclass(frozen=True)
class SignAssignment:
    sigma: Mapping[int, int]
    eps: Mapping[int, int]

    @classmethod
    def from_labels(cls, p: GentlePresentation, sigma: Mapping[str, int],
                    eps: Mapping[str, int]) -> "SignAssignment":
        q = p.quiver
        return cls(
            sigma={q.arrow_id(k): v for k, v in sigma.items()},
            eps={q.arrow_id(k): v for k, v in eps.items()},
        )


@dataclass
class ThreadIndex:
    """Everything the matching needs, computed once per presentation"""
    permitted: Tuple[Thread, ...]
    forbidden: Tuple[Thread, ...]
    relation_cycles: Tuple[Tuple[int, ...], ...]
    permitted_by_first: Dict[int, Thread] = field(default_factory=dict)
    forbidden_by_last: Dict[int, Thread] = field(default_factory=dict)
    permitted_trivial: Dict[int, Thread] = field(default_factory=dict)
    forbidden_trivial: Dict[int, Thread] = field(default_factory=dict)


_index_cache: "weakref.WeakKeyDictionary[GentlePresentation, ThreadIndex]" = weakref.WeakKeyDictionary()
_index_lock = threading.Lock()


def _through_relation(p: GentlePresentation, v: int) -> Optional[bool]:
    """None when v has no through-composition, else whether it lies in P"""
    q = p.quiver
    ins, outs = q.in_arrows(v), q.out_arrows(v)
    if not ins or not outs:
        return None
    return p.is_relation(outs[0], ins[0])


def _low_degree(p: GentlePresentation, v: int) -> bool:
    q = p.quiver
    return len(q.in_arrows(v)) <= 1 and len(q.out_arrows(v)) <= 1


def _build_index(p: GentlePresentation) -> ThreadIndex:
    q = p.quiver

    if p.is_isolated_point():
        permitted = tuple(Thread(ThreadKind.PERMITTED, at=0, orient=s) for s in (PLUS, MINUS))
        forbidden = tuple(Thread(ThreadKind.FORBIDDEN, at=0, orient=s) for s in (PLUS, MINUS))
        return ThreadIndex(permitted, forbidden, ())

    perm_chains: List[Thread] = []
    for a in range(q.num_arrows):
        if a in p.perm_pred:
            continue
        body = [a]
        while body[-1] in p.perm_succ:
            body.append(p.perm_succ[body[-1]])
        perm_chains.append(Thread(ThreadKind.PERMITTED, tuple(body)))

    on_cycle = set()
    cycles: List[Tuple[int, ...]] = []
    for a in range(q.num_arrows):
        if a in on_cycle:
            continue
        walk, b = [a], p.forb_succ.get(a)
        while b is not None and b != a and b not in walk:
            walk.append(b)
            b = p.forb_succ.get(b)
        if b == a:
            start = walk.index(min(walk))
            cycles.append(tuple(walk[start:] + walk[:start]))
            on_cycle.update(walk)

    forb_chains: List[Thread] = []
    for a in range(q.num_arrows):
        if a in on_cycle or a in p.forb_pred:
            continue
        body = [a]
        while body[-1] in p.forb_succ:
            body.append(p.forb_succ[body[-1]])
        forb_chains.append(Thread(ThreadKind.FORBIDDEN, tuple(body)))

    perm_trivial = {}
    forb_trivial = {}
    for v in range(q.num_vertices):
        if not _low_degree(p, v):
            continue
        through = _through_relation(p, v)
        if through is not True:
            perm_trivial[v] = Thread(ThreadKind.PERMITTED, at=v)
        if through is not False:
            forb_trivial[v] = Thread(ThreadKind.FORBIDDEN, at=v)

    index = ThreadIndex(
        permitted=tuple(sorted(perm_chains, key=Thread.sort_key)) + tuple(perm_trivial.values()),
        forbidden=tuple(sorted(forb_chains, key=Thread.sort_key)) + tuple(forb_trivial.values()),
        relation_cycles=tuple(sorted(cycles)),
        permitted_by_first={t.first: t for t in perm_chains},
        forbidden_by_last={t.last: t for t in forb_chains},
        permitted_trivial=perm_trivial,
        forbidden_trivial=forb_trivial,
    )
    logger.debug(
        f"{p.name}: {len(index.permitted)} permitted, {len(index.forbidden)} forbidden threads, "
        f"{len(cycles)} relation cycle(s)"
    )
    return index


def thread_index(p: GentlePresentation) -> ThreadIndex:
    with _index_lock:
        cached = _index_cache.get(p)
        if cached is None:
            cached = _build_index(p)
            _index_cache[p] = cached
        return cached


def permitted_threads(p: GentlePresentation) -> Tuple[Thread, ...]:
    """The set H_A, non-trivial threads by first arrow id, then trivial ones by vertex"""
    return thread_index(p).permitted


def forbidden_threads(p: GentlePresentation) -> Tuple[Tuple[Thread, ...], Tuple[Tuple[int, ...], ...]]:
    """
    Forbidden threads plus the arrow cycles on which every consecutive
    composition is a relation; arrows on such cycles only appear in the
    second component
    """
    index = thread_index(p)
    return index.forbidden, index.relation_cycles


# Signs


class _ParityUnionFind:
    """Union-find where every node also stores its parity relative to the root"""

    def __init__(self, nodes):
        self.parent = {v: v for v in nodes}
        self.parity = {v: 0 for v in nodes}
        self.rank = {v: 0 for v in nodes}

    def find(self, v):
        path = []
        while self.parent[v] != v:
            path.append(v)
            v = self.parent[v]
        root, acc = v, 0
        for node in reversed(path):
            acc ^= self.parity[node]
            self.parity[node] = acc
            self.parent[node] = root
        return root

    def parity_of(self, v) -> int:
        self.find(v)
        return self.parity[v]

    def join_opposite(self, u, v) -> bool:
        """Record value(u) == -value(v); False if this contradicts earlier joins"""
        ru, rv = self.find(u), self.find(v)
        pu, pv = self.parity[u], self.parity[v]
        if ru == rv:
            return pu != pv
        if self.rank[ru] < self.rank[rv]:
            ru, rv, pu, pv = rv, ru, pv, pu
        self.parent[rv] = ru
        self.parity[rv] = pu ^ pv ^ 1
        if self.rank[ru] == self.rank[rv]:
            self.rank[ru] += 1
        return True


def _sign_constraints(p: GentlePresentation):
    """Pairs of (kind, arrow) nodes whose values must be opposite, with the rule that forces them"""
    q = p.quiver
    for v in range(q.num_vertices):
        outs, ins = q.out_arrows(v), q.in_arrows(v)
        for i in range(len(outs)):
            for j in range(i + 1, len(outs)):
                yield ("sigma", outs[i]), ("sigma", outs[j]), "sign_shared_source"
        for i in range(len(ins)):
            for j in range(i + 1, len(ins)):
                yield ("eps", ins[i]), ("eps", ins[j]), "sign_shared_target"
    for beta, gamma in p.perm_succ.items():
        yield ("sigma", gamma), ("eps", beta), "sign_continuation"


def assign_signs(p: GentlePresentation) -> SignAssignment:
    """
    Deterministic sigma/epsilon assignment

    Free components are seeded +1, visiting arrows in label order with
    sigma before epsilon.
    """
    q = p.quiver
    nodes = [(kind, a) for a in range(q.num_arrows) for kind in ("sigma", "eps")]
    uf = _ParityUnionFind(nodes)
    for u, v, code in _sign_constraints(p):
        if not uf.join_opposite(u, v):
            raise InconsistentSigns(
                f"{code} on {u[0]}({q.arrow_label(u[1])}) and {v[0]}({q.arrow_label(v[1])}) cannot be satisfied"
            )

    root_value: Dict[Tuple[str, int], int] = {}
    values: Dict[Tuple[str, int], int] = {}
    for a in sorted(range(q.num_arrows), key=q.arrow_label):
        for kind in ("sigma", "eps"):
            node = (kind, a)
            root, par = uf.find(node), uf.parity_of(node)
            if root not in root_value:
                root_value[root] = PLUS if par == 0 else MINUS
            values[node] = root_value[root] * (MINUS if par else PLUS)

    sa = SignAssignment(
        sigma={a: values[("sigma", a)] for a in range(q.num_arrows)},
        eps={a: values[("eps", a)] for a in range(q.num_arrows)},
    )
    broken = check_signs(p, sa)
    if broken:
        raise InconsistentSigns(broken[0].describe())
    return sa


def check_signs(p: GentlePresentation, sa: SignAssignment) -> List[Violation]:
    q = p.quiver
    violations: List[Violation] = []
    for a in range(q.num_arrows):
        for name, table in (("sigma", sa.sigma), ("eps", sa.eps)):
            if table.get(a) not in (PLUS, MINUS):
                violations.append(Violation(
                    "sign_missing", f"{name}({q.arrow_label(a)}) must be +1 or -1", arrow=q.arrow_label(a)))
    if violations:
        return violations

    for (k1, a1), (k2, a2), code in _sign_constraints(p):
        t1 = sa.sigma if k1 == "sigma" else sa.eps
        t2 = sa.sigma if k2 == "sigma" else sa.eps
        if t1[a1] == t2[a2]:
            violations.append(Violation(
                code,
                f"{k1}({q.arrow_label(a1)}) and {k2}({q.arrow_label(a2)}) must differ",
                arrow=q.arrow_label(a1),
            ))
    return violations


def thread_signs(p: GentlePresentation, sa: SignAssignment, t: Thread) -> Tuple[int, int]:
    """
    (sigma, eps) of a thread

    Trivial threads borrow their sign from the incident arrows; when a
    vertex has both an incoming and an outgoing arrow the outgoing one
    decides.
    """
    if not t.is_trivial:
        return sa.sigma[t.first], sa.eps[t.last]
    if t.orient is not None or p.is_isolated_point():
        raise IsolatedVertex("trivial threads of the one-vertex algebra carry their sign as an orientation tag")

    q = p.quiver
    outs, ins = q.out_arrows(t.at), q.in_arrows(t.at)
    if t.kind is ThreadKind.PERMITTED:
        s = -sa.sigma[outs[0]] if outs else sa.eps[ins[0]]
        return s, -s
    s = -sa.sigma[outs[0]] if outs else -sa.eps[ins[0]]
    return s, s


# Matching


def _forbidden_ending_with(p: GentlePresentation, index: ThreadIndex, arrow: int) -> Thread:
    t = index.forbidden_by_last.get(arrow)
    if t is None:
        raise MatchFailure(f"no forbidden thread ends with {p.quiver.arrow_label(arrow)}")
    return t


def _permitted_starting_with(p: GentlePresentation, index: ThreadIndex, arrow: int) -> Thread:
    t = index.permitted_by_first.get(arrow)
    if t is None:
        raise MatchFailure(f"no permitted thread starts with {p.quiver.arrow_label(arrow)}")
    return t


def _trivial(p: GentlePresentation, table: Dict[int, Thread], v: int, what: str) -> Thread:
    t = table.get(v)
    if t is None:
        raise MatchFailure(f"expected a trivial {what} thread at {p.quiver.vertex_label(v)}")
    return t


def match_end(p: GentlePresentation, h: Thread) -> Thread:
    """The forbidden thread ending at e(h) on the other epsilon-side"""
    if h.kind is not ThreadKind.PERMITTED:
        raise MatchFailure("match_end expects a permitted thread")
    index = thread_index(p)
    q = p.quiver

    if h.orient is not None:
        return Thread(ThreadKind.FORBIDDEN, at=h.at, orient=-h.orient)

    if h.is_trivial:
        v = h.at
        ins = q.in_arrows(v)
        if ins:
            return _forbidden_ending_with(p, index, ins[0])
        return _trivial(p, index.forbidden_trivial, v, "forbidden")

    v = q.target(h.last)
    others = [b for b in q.in_arrows(v) if b != h.last]
    if others:
        return _forbidden_ending_with(p, index, others[0])
    return _trivial(p, index.forbidden_trivial, v, "forbidden")


def match_start(p: GentlePresentation, f: Thread) -> Thread:
    """The permitted thread starting at s(f) on the other sigma-side"""
    if f.kind is not ThreadKind.FORBIDDEN:
        raise MatchFailure("match_start expects a forbidden thread")
    index = thread_index(p)
    q = p.quiver

    if f.orient is not None:
        return Thread(ThreadKind.PERMITTED, at=f.at, orient=f.orient)

    if f.is_trivial:
        v = f.at
        outs = q.out_arrows(v)
        if outs:
            return _permitted_starting_with(p, index, outs[0])
        return _trivial(p, index.permitted_trivial, v, "permitted")

    v = q.source(f.first)
    others = [c for c in q.out_arrows(v) if c != f.first]
    if others:
        return _permitted_starting_with(p, index, others[0])
    return _trivial(p, index.permitted_trivial, v, "permitted")
