#!/usr/bin/env python3
"""
Independent recomputation of phi_A through the repetitive algebra

A finite window of the repetitive expansion is built level by level. Permitted
threads of the quotient algebra are kept symbolically as the arrow their
full path loses, and the cosyzygy inverse is iterated on them. Nothing in
here consults threads.match_end or threads.match_start.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple, Union

from .ag_invariant import PhiInvariant
from .config import get_settings
from .errors import DepthTooSmall, InconsistentInvariant, Violation, WindowExhausted
from .quiver_core import GentlePresentation
from .threads import PLUS, Thread, permitted_threads, thread_label

logger = logging.getLogger(__name__)


class ArrowKind(Enum):
    REGULAR = "regular"
    CONNECTION = "connection"


class WindowArrow(NamedTuple):
    """Regular arrow a[z] (ref = arrow id) or connection arrow of thread ref at level z"""
    kind: ArrowKind
    ref: int
    z: int

    def shifted(self, k: int = 1) -> "WindowArrow":
        return WindowArrow(self.kind, self.ref, self.z + k)


Vertex = Tuple[int, int]


class HatKind(Enum):
    TRIVIAL = "trivial"
    COPY = "copy"
    ARROW_INVERSE = "arrow_inverse"


@dataclass(frozen=True)
class HatThread:
    """
    Permitted thread of the bar quotient of the repetitive algebra

    TRIVIAL: ref is a vertex of Q. COPY: ref indexes the non-trivial
    permitted threads of A. ARROW_INVERSE: ref is an arrow of Q.
    """
    kind: HatKind
    ref: int
    z: int
    orient: Optional[int] = None

    def shifted(self, k: int = 1) -> "HatThread":
        return HatThread(self.kind, self.ref, self.z + k, self.orient)

    def key(self) -> Tuple[HatKind, int, Optional[int]]:
        """Identity modulo the shift nu"""
        return self.kind, self.ref, self.orient

    @property
    def is_string_element(self) -> bool:
        return self.kind is not HatKind.ARROW_INVERSE


def trivial_at(v: int, z: int, orient: Optional[int] = None) -> HatThread:
    return HatThread(HatKind.TRIVIAL, v, z, orient)


def copy_of(i: int, z: int) -> HatThread:
    return HatThread(HatKind.COPY, i, z)


def arrow_inverse(a: int, z: int) -> HatThread:
    return HatThread(HatKind.ARROW_INVERSE, a, z)


@dataclass
class ExpansionWindow:
    """Levels 0..depth of the expansion; degrees are complete on levels 1..depth-1"""
    presentation: GentlePresentation
    depth: int
    threads: Tuple[Thread, ...]
    position: Dict[int, Tuple[int, int]]
    endpoints: Dict[WindowArrow, Tuple[Vertex, Vertex]] = field(default_factory=dict)
    out_at: Dict[Vertex, List[WindowArrow]] = field(default_factory=lambda: defaultdict(list))
    in_at: Dict[Vertex, List[WindowArrow]] = field(default_factory=lambda: defaultdict(list))

    def __contains__(self, arrow: WindowArrow) -> bool:
        return arrow in self.endpoints

    def require(self, arrow: WindowArrow) -> WindowArrow:
        if arrow not in self.endpoints:
            raise WindowExhausted(f"{self.arrow_label(arrow)} lies outside the window of depth {self.depth}")
        return arrow

    def require_interior(self, vertex: Vertex) -> Vertex:
        if not 1 <= vertex[1] <= self.depth - 1:
            raise WindowExhausted(f"level {vertex[1]} is outside the interior of the window of depth {self.depth}")
        return vertex

    def source(self, arrow: WindowArrow) -> Vertex:
        return self.endpoints[self.require(arrow)][0]

    def target(self, arrow: WindowArrow) -> Vertex:
        return self.endpoints[self.require(arrow)][1]

    def out_arrows(self, vertex: Vertex) -> List[WindowArrow]:
        return self.out_at.get(self.require_interior(vertex), [])

    def in_arrows(self, vertex: Vertex) -> List[WindowArrow]:
        return self.in_at.get(self.require_interior(vertex), [])

    def is_transition(self, vertex: Vertex) -> bool:
        return len(self.out_arrows(vertex)) == 1 and len(self.in_arrows(vertex)) == 1

    def pred(self, arrow: WindowArrow) -> WindowArrow:
        """The arrow before this one on its relation-free line"""
        if arrow.kind is ArrowKind.CONNECTION:
            body = self.threads[arrow.ref].body
            return WindowArrow(ArrowKind.REGULAR, body[-1], arrow.z + 1)
        i, j = self.position[arrow.ref]
        if j == 0:
            return WindowArrow(ArrowKind.CONNECTION, i, arrow.z)
        return WindowArrow(ArrowKind.REGULAR, self.threads[i].body[j - 1], arrow.z)

    def succ(self, arrow: WindowArrow) -> WindowArrow:
        if arrow.kind is ArrowKind.CONNECTION:
            return WindowArrow(ArrowKind.REGULAR, self.threads[arrow.ref].body[0], arrow.z)
        i, j = self.position[arrow.ref]
        body = self.threads[i].body
        if j == len(body) - 1:
            return WindowArrow(ArrowKind.CONNECTION, i, arrow.z - 1)
        return WindowArrow(ArrowKind.REGULAR, body[j + 1], arrow.z)

    def is_relation(self, second: WindowArrow, first: WindowArrow) -> bool:
        """A composable pair is zero exactly when it leaves the line"""
        return self.target(first) == self.source(second) and self.succ(first) != second

    def line_length(self, arrow: WindowArrow) -> int:
        """Arrows of one full turn of the line through this arrow"""
        i = arrow.ref if arrow.kind is ArrowKind.CONNECTION else self.position[arrow.ref][0]
        return len(self.threads[i].body) + 1

    def arrow_label(self, arrow: WindowArrow) -> str:
        q = self.presentation.quiver
        if arrow.kind is ArrowKind.REGULAR:
            return f"{q.arrow_label(arrow.ref)}[{arrow.z}]"
        return f"({thread_label(self.presentation, self.threads[arrow.ref])})_0[{arrow.z}]"

    def hat_label(self, h: HatThread) -> str:
        return hat_label(self.presentation, h, self.threads)


def hat_label(p: GentlePresentation, h: HatThread, threads: Optional[Tuple[Thread, ...]] = None) -> str:
    q = p.quiver
    if h.kind is HatKind.TRIVIAL:
        tag = "" if h.orient is None else ("+" if h.orient == PLUS else "-")
        return f"1_{q.vertex_label(h.ref)}{tag}[{h.z}]"
    if h.kind is HatKind.ARROW_INVERSE:
        return f"{q.arrow_label(h.ref)}[{h.z}]^-1"
    threads = threads if threads is not None else _nontrivial_threads(p)
    return f"({thread_label(p, threads[h.ref])})[{h.z}]"


def _nontrivial_threads(p: GentlePresentation) -> Tuple[Thread, ...]:
    return tuple(t for t in permitted_threads(p) if not t.is_trivial)


def build_window(p: GentlePresentation, depth: int) -> ExpansionWindow:
    if depth < 1:
        raise DepthTooSmall(f"window depth must be at least 1, got {depth}")
    q = p.quiver
    threads = _nontrivial_threads(p)
    position = {a: (i, j) for i, t in enumerate(threads) for j, a in enumerate(t.body)}
    window = ExpansionWindow(p, depth, threads, position)

    def add(arrow: WindowArrow, src: Vertex, tgt: Vertex):
        window.endpoints[arrow] = (src, tgt)
        window.out_at[src].append(arrow)
        window.in_at[tgt].append(arrow)

    for z in range(depth + 1):
        for a in q.arrows:
            add(WindowArrow(ArrowKind.REGULAR, a.id, z), (a.source, z), (a.target, z))
        if z < depth:
            for i, t in enumerate(threads):
                add(WindowArrow(ArrowKind.CONNECTION, i, z), (t.end(p), z + 1), (t.start(p), z))

    logger.debug(f"{p.name}: window of depth {depth} with {len(window.endpoints)} arrows")
    return window


def window_violations(window: ExpansionWindow) -> List[Violation]:
    """Check slice sizes, shift equivariance, full-path shape and vertex types"""
    p = window.presentation
    violations: List[Violation] = []
    expected = p.num_arrows + len(window.threads)

    per_level: Dict[int, int] = defaultdict(int)
    for arrow in window.endpoints:
        per_level[arrow.z] += 1
    for z in range(window.depth):
        if per_level[z] != expected:
            violations.append(Violation(
                "window_slice_size", f"level {z} has {per_level[z]} arrows, expected {expected}", location=f"z={z}"))

    for arrow, (src, tgt) in window.endpoints.items():
        moved = arrow.shifted()
        if moved in window and window.endpoints[moved] != ((src[0], src[1] + 1), (tgt[0], tgt[1] + 1)):
            violations.append(Violation(
                "window_shift", f"{window.arrow_label(arrow)} is not carried onto {window.arrow_label(moved)}"))

        path = [arrow]
        for _ in range(window.line_length(arrow) - 1):
            before = window.pred(path[0])
            if before not in window:
                break
            path.insert(0, before)
        else:
            start = window.endpoints[path[0]][0]
            if start != (tgt[0], tgt[1] + 1):
                violations.append(Violation(
                    "window_full_path",
                    f"full path ending with {window.arrow_label(arrow)} starts at level {start[1]} "
                    f"vertex {p.quiver.vertex_label(start[0])}",
                ))

    for v in range(p.num_vertices):
        for z in range(1, window.depth):
            shape = (len(window.in_at.get((v, z), [])), len(window.out_at.get((v, z), [])))
            if shape not in ((1, 1), (2, 2)) and not p.is_isolated_point():
                violations.append(Violation(
                    "window_vertex_shape",
                    f"{p.quiver.vertex_label(v)}[{z}] has in/out degree {shape}",
                    vertex=p.quiver.vertex_label(v),
                ))
    return violations


def hat_threads_slice(p: GentlePresentation, z: int = 0) -> Tuple[HatThread, ...]:
    """Copies of non-trivial threads, then trivial threads, then arrow inverses"""
    copies = tuple(copy_of(i, z) for i in range(len(_nontrivial_threads(p))))
    trivials = tuple(trivial_at(t.at, z, t.orient) for t in permitted_threads(p) if t.is_trivial)
    inverses = tuple(arrow_inverse(a, z) for a in range(p.num_arrows))
    return copies + trivials + inverses


def deleted_arrow(h: HatThread) -> WindowArrow:
    """Final arrow of the full path this thread is cut from"""
    if h.kind is HatKind.COPY:
        return WindowArrow(ArrowKind.CONNECTION, h.ref, h.z - 1)
    if h.kind is HatKind.ARROW_INVERSE:
        return WindowArrow(ArrowKind.REGULAR, h.ref, h.z)
    raise ValueError("trivial threads have no full path")


def _from_deleted(arrow: WindowArrow) -> HatThread:
    if arrow.kind is ArrowKind.REGULAR:
        return arrow_inverse(arrow.ref, arrow.z)
    return copy_of(arrow.ref, arrow.z + 1)


def _starting_with(window: ExpansionWindow, gamma: WindowArrow) -> HatThread:
    return _from_deleted(window.require(window.pred(gamma)).shifted(-1))


def _ending_with(window: ExpansionWindow, delta: WindowArrow) -> HatThread:
    return _from_deleted(window.succ(delta))


def _other(arrows: List[WindowArrow], taken: WindowArrow) -> WindowArrow:
    rest = [a for a in arrows if a != taken]
    if len(rest) != 1:
        raise InconsistentInvariant(f"expected one arrow besides {taken}, found {len(rest)}")
    return rest[0]


WindowOrPresentation = Union[ExpansionWindow, GentlePresentation]


def _as_window(source: WindowOrPresentation, h: HatThread) -> ExpansionWindow:
    if isinstance(source, ExpansionWindow):
        return source
    return build_window(source, max(1, h.z + 3))


def omega_inverse(source: WindowOrPresentation, h: HatThread) -> HatThread:
    """
    Cosyzygy inverse of a quotient thread

    A trivial thread at v[z] goes to the thread starting at v[z+1]. A
    non-trivial one with deleted arrow b goes to the trivial thread at
    x = s(nu b) when x is a transition vertex, and otherwise to the thread
    starting with the arrow at x other than nu b.
    """
    window = _as_window(source, h)
    if window.presentation.is_isolated_point():
        window.require_interior((h.ref, h.z + 1))
        return trivial_at(h.ref, h.z + 1, -h.orient if h.orient is not None else None)

    if h.kind is HatKind.TRIVIAL:
        outs = window.out_arrows((h.ref, h.z + 1))
        if len(outs) != 1:
            raise InconsistentInvariant(f"{window.hat_label(h)} does not sit at a transition vertex")
        return _starting_with(window, outs[0])

    moved = window.require(deleted_arrow(h).shifted())
    x = window.source(moved)
    if window.is_transition(x):
        return trivial_at(x[0], x[1])
    return _starting_with(window, _other(window.out_arrows(x), moved))


def _u(window: ExpansionWindow, beta: WindowArrow) -> HatThread:
    y = window.target(beta)
    if window.is_transition(y):
        return trivial_at(y[0], y[1])
    return _ending_with(window, _other(window.in_arrows(y), beta))


def tau(window: ExpansionWindow, h: HatThread) -> HatThread:
    """Combinatorial Auslander-Reiten translation on quotient threads"""
    if window.presentation.is_isolated_point():
        return trivial_at(h.ref, h.z - 1, h.orient)

    if h.kind is HatKind.TRIVIAL:
        outs = window.out_arrows((h.ref, h.z))
        return _u(window, outs[0])

    gamma = window.require(window.succ(deleted_arrow(h)).shifted())
    x = window.source(gamma)
    if window.is_transition(x):
        below = (x[0], x[1] - 1)
        ins = window.in_arrows(below)
        return _ending_with(window, ins[0])
    return _u(window, _other(window.out_arrows(x), gamma))


class OrbitResult(NamedTuple):
    pair: Tuple[int, int]
    series_size: Optional[int]
    tube_rank: Optional[int]
    shift: int
    elements: Tuple[HatThread, ...]


def orbit_invariant(source: WindowOrPresentation, start: HatThread,
                    omega: Callable[[ExpansionWindow, HatThread], HatThread] = omega_inverse) -> OrbitResult:
    """
    Follow omega_inverse from start until it comes back up to a shift

    n counts trivial and copied threads, m counts arrow inverses; the
    series has |n-m| components, or is a tube of rank n when n == m.
    """
    p = source.presentation if isinstance(source, ExpansionWindow) else source
    limit = len(permitted_threads(p)) + p.num_arrows
    window = source if isinstance(source, ExpansionWindow) else build_window(p, start.z + limit + 2)

    elements = [start]
    seen = {start.key()}
    current = start
    while True:
        current = omega(window, current)
        if current.key() == start.key():
            break
        if current.key() in seen or len(elements) >= limit:
            raise InconsistentInvariant(
                f"orbit of {window.hat_label(start)} does not close at {window.hat_label(current)}")
        seen.add(current.key())
        elements.append(current)

    n = sum(1 for e in elements if e.is_string_element)
    m = len(elements) - n
    shift = current.z - start.z
    if shift != n:
        raise InconsistentInvariant(
            f"orbit of {window.hat_label(start)} returns shifted by {shift}, expected {n}")
    if n != m:
        return OrbitResult((n, m), abs(n - m), None, shift, tuple(elements))
    return OrbitResult((n, m), None, n, shift, tuple(elements))


def _orbits(p: GentlePresentation, window: ExpansionWindow, z0: int) -> List[OrbitResult]:
    results: List[OrbitResult] = []
    covered = set()
    for h in hat_threads_slice(p, z0):
        if h.key() in covered:
            continue
        orbit = orbit_invariant(window, h)
        covered.update(e.key() for e in orbit.elements)
        results.append(orbit)
    total = sum(len(o.elements) for o in results)
    if total != len(permitted_threads(p)) + p.num_arrows:
        raise InconsistentInvariant(f"orbits cover {total} slice elements")
    return results


def _with_growing_window(p: GentlePresentation) -> List[OrbitResult]:
    limit = len(permitted_threads(p)) + p.num_arrows + 2
    depth = max(1, get_settings().oracle_initial_depth)
    while True:
        try:
            return _orbits(p, build_window(p, depth), 0)
        except WindowExhausted as exc:
            if depth >= limit:
                raise
            logger.warning(f"{p.name}: {exc}; retrying with a deeper window")
            depth = min(depth * 2, limit)


def compute_N(p: GentlePresentation) -> PhiInvariant:
    """N_A, read off the orbits of the cosyzygy action on one slice"""
    return PhiInvariant.of(o.pair for o in _with_growing_window(p))


@dataclass(frozen=True)
class SeriesComponent:
    pair: Tuple[int, int]
    series_size: Optional[int]
    tube_rank: Optional[int]
    shift: int
    start: HatThread

    def describe(self, p: GentlePresentation) -> str:
        n, m = self.pair
        shape = f"{self.series_size} component(s)" if self.tube_rank is None else f"tubes of rank {self.tube_rank}"
        return f"({n},{m}) from {hat_label(p, self.start)}: {shape}, shift {self.shift}"


def series_components(p: GentlePresentation) -> List[SeriesComponent]:
    return [SeriesComponent(o.pair, o.series_size, o.tube_rank, o.shift, o.elements[0])
            for o in _with_growing_window(p)]


@dataclass
class TauCheck:
    ok: bool
    witness: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def tau_check(p: GentlePresentation,
              omega: Callable[[ExpansionWindow, HatThread], HatThread] = omega_inverse,
              z0: int = 2) -> TauCheck:
    """Verify that two cosyzygy-inverse steps undo tau up to the shift nu on one slice"""
    window = build_window(p, z0 + 5)
    for h in hat_threads_slice(p, z0):
        translated = tau(window, h)
        back = omega(window, omega(window, translated))
        if back != h.shifted():
            witness = (f"{window.hat_label(h)}: tau gives {window.hat_label(translated)}, "
                       f"two steps back give {window.hat_label(back)}, expected {window.hat_label(h.shifted())}")
            logger.info(f"{p.name}: tau check failed at {witness}")
            return TauCheck(False, witness)
    return TauCheck(True)
