#!/usr/bin/env python3
"""
The AG-invariant phi_A

Walks the permutation H -> match_start(match_end(H)) of the permitted
threads, turns each run into a pair (n, m) and adds (0, m) for every
relation cycle.
"""

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .errors import InconsistentInvariant, MatchFailure
from .quiver_core import GentlePresentation
from .threads import (
    Thread,
    ThreadKind,
    forbidden_threads,
    inverse_label,
    match_end,
    match_start,
    permitted_threads,
    thread_label,
)

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass(frozen=True)
class PhiInvariant:
    """Multiset of (n, m) pairs, kept sorted so equality is multiset equality"""
    pairs: Tuple[Pair, ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(sorted((int(n), int(m)) for n, m in self.pairs)))

    @classmethod
    def of(cls, pairs: Iterable[Pair]) -> "PhiInvariant":
        return cls(tuple(pairs))

    def __str__(self) -> str:
        return phi_canonical_text(self)

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def counts(self) -> Counter:
        return Counter(self.pairs)


def phi_total(phi: PhiInvariant) -> int:
    """#phi_A, the number of pairs counted with multiplicity"""
    return len(phi.pairs)


def support(phi: PhiInvariant) -> Tuple[Pair, ...]:
    """Distinct pairs of phi_A"""
    return tuple(sorted(set(phi.pairs)))


@dataclass
class Run:
    """One cycle of the matching permutation: H0, Pi0, H1, Pi1, ..., back to H0"""
    permitted: List[Thread] = field(default_factory=list)
    forbidden: List[Thread] = field(default_factory=list)

    @property
    def pair(self) -> Pair:
        return len(self.permitted), sum(len(f) for f in self.forbidden)


@dataclass
class AlgorithmTrace:
    runs: List[Run] = field(default_factory=list)
    cycles: List[Tuple[Tuple[int, ...], Pair]] = field(default_factory=list)


def relation_cycles(p: GentlePresentation) -> List[Tuple[int, ...]]:
    """Directed cycles all of whose consecutive compositions are relations, each from its least arrow id"""
    return list(forbidden_threads(p)[1])


def _walk_run(p: GentlePresentation, seed: Thread, used: set) -> Run:
    run = Run()
    h = seed
    while True:
        f = match_end(p, h)
        if f.kind is not ThreadKind.FORBIDDEN:
            raise MatchFailure(f"match_end({thread_label(p, h)}) returned a permitted thread")
        run.permitted.append(h)
        run.forbidden.append(f)
        used.add(h)
        h = match_start(p, f)
        if h == seed:
            return run
        if h in used:
            raise MatchFailure(
                f"thread {thread_label(p, h)} recurs before the run from {thread_label(p, seed)} closes"
            )


def compute_phi(p: GentlePresentation,
                seed_order: Optional[Callable[[Sequence[Thread]], Sequence[Thread]]] = None
                ) -> Tuple[PhiInvariant, AlgorithmTrace]:
    """
    Compute phi_A together with the runs that produced it

    seed_order may reorder the permitted threads before seeds are picked;
    the default picks the least unused thread in canonical order.
    """
    threads = list(permitted_threads(p))
    if seed_order is not None:
        threads = list(seed_order(threads))

    trace = AlgorithmTrace()
    used: set = set()
    for seed in threads:
        if seed in used:
            continue
        run = _walk_run(p, seed, used)
        trace.runs.append(run)
        logger.debug(f"{p.name}: run from {thread_label(p, seed)} closes with {run.pair}")

    cyclic_arrows = set()
    for cycle in relation_cycles(p):
        trace.cycles.append((cycle, (0, len(cycle))))
        cyclic_arrows.update(cycle)

    for run in trace.runs:
        for f in run.forbidden:
            if cyclic_arrows.intersection(f.body):
                raise InconsistentInvariant(
                    f"forbidden thread {thread_label(p, f)} reached an arrow on a relation cycle"
                )

    phi = PhiInvariant.of([r.pair for r in trace.runs] + [pair for _, pair in trace.cycles])
    return phi, trace


def check_sums(phi: PhiInvariant, p: GentlePresentation) -> bool:
    """Sum of first components is #H_A and of second components #Q1"""
    return (sum(n for n, _ in phi.pairs) == len(permitted_threads(p))
            and sum(m for _, m in phi.pairs) == p.num_arrows)


def phi_canonical_text(phi: PhiInvariant) -> str:
    return "[" + ",".join(f"({n},{m})" for n, m in phi.pairs) + "]"


_PAIR = r"\(\s*\d+\s*,\s*\d+\s*\)"
_PHI_TEXT = re.compile(rf"\[\s*(?:{_PAIR}(?:\s*,\s*{_PAIR})*)?\s*\]")


def parse_phi_text(text: str) -> PhiInvariant:
    """Inverse of phi_canonical_text; whitespace between tokens is tolerated"""
    body = text.strip()
    if not _PHI_TEXT.fullmatch(body):
        raise ValueError(f"not a phi multiset: {text!r}")
    return PhiInvariant.of((int(n), int(m)) for n, m in re.findall(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", body))


def render_trace(p: GentlePresentation, trace: AlgorithmTrace) -> str:
    """Two-column arrays: H_i on the left, Pi_i^-1 on the right, '*' for trivial forbidden threads"""
    blocks: List[str] = []
    for k, run in enumerate(trace.runs, 1):
        rows = [(f"H_{i} = {thread_label(p, h)}", f"Pi_{i}^-1 = {inverse_label(p, f)}")
                for i, (h, f) in enumerate(zip(run.permitted, run.forbidden))]
        rows.append((f"H_{len(run.permitted)} = H_0", ""))
        width = max(len(left) for left, _ in rows)
        lines = [f"run {k}:"]
        lines.extend(f"  {left.ljust(width)}   {right}".rstrip() for left, right in rows)
        n, m = run.pair
        lines.append(f"  -> ({n},{m})")
        blocks.append("\n".join(lines))
    for cycle, (n, m) in trace.cycles:
        arrows = " ".join(p.quiver.arrow_label(a) for a in cycle)
        blocks.append(f"relation cycle: {arrows}\n  -> ({n},{m})")
    return "\n\n".join(blocks)
