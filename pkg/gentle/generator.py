#!/usr/bin/env python3
"""
Seeded sampler of connected finite-dimensional gentle presentations

The pseudo-random stream is xorshift64* seeded through splitmix64, so a
seed gives the same quiver on every platform and in every language.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple, TypeVar

import networkx as nx

from .config import get_settings
from .errors import BadParameters, GenerationFailed, InvalidPresentation
from .quiver_core import GentlePresentation, RawQuiver, build_presentation

logger = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
T = TypeVar("T")


def splitmix64(state: int) -> Tuple[int, int]:
    """One splitmix64 step: (next state, output)"""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


class XorShift64Star:
    MULTIPLIER = 0x2545F4914F6CDD1D

    def __init__(self, seed: int):
        _, state = splitmix64(seed & MASK64)
        self.state = state or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * self.MULTIPLIER) & MASK64

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection"""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        limit = ((1 << 64) // n) * n
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def choice(self, items: Sequence[T]) -> T:
        return items[self.below(len(items))]

    def chance(self, p: Fraction) -> bool:
        return self.below(p.denominator) < p.numerator


@dataclass(frozen=True)
class GeneratorParams:
    vertices: int
    cycles: int = 0
    density: Fraction = Fraction(1, 2)
    seed: int = 0

    def check(self):
        if self.vertices < 1:
            raise BadParameters(f"vertex count must be at least 1, got {self.vertices}")
        if not 0 <= self.cycles <= self.vertices:
            raise BadParameters(f"cycle target must lie in [0, {self.vertices}], got {self.cycles}")
        if not 0 <= self.density <= 1:
            raise BadParameters(f"relation density must lie in [0, 1], got {self.density}")


class _Draft:
    """Arrows and relations under construction, indexed by integers"""

    def __init__(self, n: int):
        self.n = n
        self.arrows: List[Tuple[int, int]] = []
        self.relations: Set[Tuple[int, int]] = set()

    def outs(self, v: int) -> List[int]:
        return [k for k, (s, _) in enumerate(self.arrows) if s == v]

    def ins(self, v: int) -> List[int]:
        return [k for k, (_, t) in enumerate(self.arrows) if t == v]

    def add_arrow(self, s: int, t: int):
        self.arrows.append((s, t))

    def permitted_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.arrows)))
        for b, (_, t) in enumerate(self.arrows):
            for g in self.outs(t):
                if (g, b) not in self.relations:
                    graph.add_edge(b, g)
        return graph


def _grow_tree(rng: XorShift64Star, draft: _Draft) -> bool:
    for new in range(1, draft.n):
        slots = []
        for v in range(new):
            if len(draft.outs(v)) < 2:
                slots.append((v, new))
            if len(draft.ins(v)) < 2:
                slots.append((new, v))
        if not slots:
            return False
        draft.add_arrow(*rng.choice(slots))
    return True


def _add_cycles(rng: XorShift64Star, draft: _Draft, count: int) -> bool:
    for _ in range(count):
        slots = [(u, w) for u in range(draft.n) for w in range(draft.n)
                 if len(draft.outs(u)) < 2 and len(draft.ins(w)) < 2]
        if not slots:
            return False
        draft.add_arrow(*rng.choice(slots))
    return True


def _choose_relations(rng: XorShift64Star, draft: _Draft, density: Fraction):
    for v in range(draft.n):
        ins, outs = draft.ins(v), draft.outs(v)
        if len(ins) == 2 and len(outs) == 2:
            if rng.below(2):
                outs = outs[::-1]
            draft.relations.update({(outs[0], ins[0]), (outs[1], ins[1])})
        elif len(ins) == 2 and len(outs) == 1:
            draft.relations.add((outs[0], rng.choice(ins)))
        elif len(ins) == 1 and len(outs) == 2:
            draft.relations.add((rng.choice(outs), ins[0]))
        elif len(ins) == 1 and len(outs) == 1 and rng.chance(density):
            draft.relations.add((outs[0], ins[0]))


def _repair_once(rng: XorShift64Star, draft: _Draft, cycle: List[Tuple[int, int]]) -> None:
    """Break one relation-free cycle by adding or moving a relation at a vertex on it"""
    open_sites = []
    swap_sites = []
    for b, g in cycle:
        v = draft.arrows[b][1]
        ins, outs = draft.ins(v), draft.outs(v)
        if len(ins) == 1 and len(outs) == 1:
            open_sites.append((g, b))
        else:
            swap_sites.append((v, b, g))

    if open_sites:
        draft.relations.add(rng.choice(open_sites))
        return

    v, b, g = rng.choice(swap_sites)
    ins, outs = draft.ins(v), draft.outs(v)
    at_v = {rel for rel in draft.relations if rel[1] in ins and rel[0] in outs}
    draft.relations -= at_v
    if len(ins) == 2 and len(outs) == 2:
        other_in = [x for x in ins if x != b][0]
        other_out = [x for x in outs if x != g][0]
        draft.relations.update({(g, b), (other_out, other_in)})
    else:
        draft.relations.add((g, b))


def _attempt(rng: XorShift64Star, params: GeneratorParams, repair_rounds: int) -> Optional[_Draft]:
    draft = _Draft(params.vertices)
    if not _grow_tree(rng, draft) or not _add_cycles(rng, draft, params.cycles):
        return None
    _choose_relations(rng, draft, params.density)

    for round_no in range(repair_rounds + 1):
        try:
            cycle = nx.find_cycle(draft.permitted_graph())
        except nx.NetworkXNoCycle:
            return draft
        if round_no == repair_rounds:
            break
        logger.debug(f"repairing relation-free cycle of length {len(cycle)}")
        _repair_once(rng, draft, cycle)
    return None


def random_gentle(params: GeneratorParams, max_attempts: Optional[int] = None,
                  repair_rounds: Optional[int] = None) -> GentlePresentation:
    """
    Sample a gentle presentation with the requested vertex and cycle counts

    Raises GenerationFailed after max_attempts unsuccessful attempts.
    """
    params.check()
    settings = get_settings()
    max_attempts = settings.generator_max_attempts if max_attempts is None else max_attempts
    repair_rounds = settings.generator_repair_rounds if repair_rounds is None else repair_rounds

    rng = XorShift64Star(params.seed)
    for attempt in range(1, max_attempts + 1):
        draft = _attempt(rng, params, repair_rounds)
        if draft is None:
            logger.debug(f"seed {params.seed}: attempt {attempt} gave up")
            continue
        raw = _to_raw(draft, params)
        try:
            return build_presentation(raw)
        except InvalidPresentation as exc:
            logger.debug(f"seed {params.seed}: attempt {attempt} rejected: {exc}")

    logger.warning(f"No gentle presentation for {params} after {max_attempts} attempts")
    raise GenerationFailed(max_attempts, f"{params.vertices} vertices, {params.cycles} cycles")


def _to_raw(draft: _Draft, params: GeneratorParams) -> RawQuiver:
    labels: Dict[int, str] = {v: f"v{v + 1}" for v in range(draft.n)}
    return RawQuiver(
        vertices=[labels[v] for v in range(draft.n)],
        arrows=[(f"a{k + 1}", labels[s], labels[t]) for k, (s, t) in enumerate(draft.arrows)],
        relations=[(f"a{g + 1}", f"a{b + 1}") for g, b in sorted(draft.relations, key=lambda r: (r[1], r[0]))],
        name=f"gen_n{params.vertices}_c{params.cycles}_s{params.seed}",
    )


def generate_corpus(count: int, max_vertices: int = 10, max_cycles: int = 3,
                    seed: int = 0) -> Iterator[GentlePresentation]:
    """
    A reproducible stream of gentle presentations with mixed sizes and densities

    Parameter choices that admit no presentation are skipped.
    """
    rng = XorShift64Star(seed)
    densities = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]
    produced = 0
    while produced < count:
        n = 1 + rng.below(max_vertices)
        c = rng.below(min(max_cycles, n) + 1)
        params = GeneratorParams(n, c, rng.choice(densities), rng.next_u64())
        try:
            yield random_gentle(params)
        except GenerationFailed:
            continue
        produced += 1
