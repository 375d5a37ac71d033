"""
JSON mirror of presentations, invariants and verdicts
"""

import json
from typing import Any, Dict, List, Optional

from . import __version__
from .ag_invariant import AlgorithmTrace, PhiInvariant
from .classification import An, ATilde, BeyondOneCycle, EquivVerdict, Lambda, Verdict
from .config import get_settings
from .quiver_core import GentlePresentation, RawQuiver, build_presentation
from .threads import Thread, forbidden_threads, permitted_threads, thread_label


def _phi(phi: PhiInvariant) -> List[List[int]]:
    return [[n, m] for n, m in phi.pairs]


def _thread(t: Thread, p: Optional[GentlePresentation]) -> Dict[str, Any]:
    record: Dict[str, Any] = {"kind": t.kind.value}
    if t.is_trivial:
        record["at"] = p.quiver.vertex_label(t.at) if p else t.at
        if t.orient is not None:
            record["orient"] = "+" if t.orient > 0 else "-"
    else:
        record["arrows"] = [p.quiver.arrow_label(a) for a in t.body] if p else list(t.body)
    if p is not None:
        record["name"] = thread_label(p, t)
    return record


def to_payload(value: Any, p: Optional[GentlePresentation] = None) -> Dict[str, Any]:
    if isinstance(value, PhiInvariant):
        return {"phi": _phi(value)}

    if isinstance(value, EquivVerdict):
        if value.verdict is Verdict.NOT_EQUIVALENT:
            return {
                "verdict": value.verdict.value,
                "witnesses": [{"invariant": w.invariant, "left": w.left, "right": w.right} for w in value.witnesses],
                "phi_a": _phi(value.phi_a),
                "phi_b": _phi(value.phi_b),
                "cycles_a": value.cycles_a,
                "cycles_b": value.cycles_b,
            }
        return {"verdict": value.verdict.value, "phi": _phi(value.phi_a), "cycles": value.cycles_a}

    if isinstance(value, An):
        return {"family": "An", "n": value.n}
    if isinstance(value, ATilde):
        return {"family": "ATilde", "p": value.p, "q": value.q}
    if isinstance(value, Lambda):
        return {"family": "Lambda", "r": value.r, "n": value.n, "m": value.m}
    if isinstance(value, BeyondOneCycle):
        return {"family": "BeyondOneCycle", "cycles": value.cycles}

    if isinstance(value, GentlePresentation):
        q = value.quiver
        return {
            "name": q.name,
            "vertices": list(q.vertex_labels),
            "arrows": [{"label": a.label, "source": q.vertex_label(a.source), "target": q.vertex_label(a.target)}
                       for a in q.arrows],
            "relations": [{"second": q.arrow_label(r.second), "first": q.arrow_label(r.first)}
                          for r in value.sorted_relations()],
        }

    if isinstance(value, AlgorithmTrace):
        return {
            "runs": [{"permitted": [_thread(h, p) for h in run.permitted],
                      "forbidden": [_thread(f, p) for f in run.forbidden],
                      "pair": list(run.pair)} for run in value.runs],
            "cycles": [{"arrows": [p.quiver.arrow_label(a) for a in cycle] if p else list(cycle),
                        "pair": list(pair)} for cycle, pair in value.cycles],
        }

    raise TypeError(f"cannot serialize {type(value).__name__}")


def threads_payload(p: GentlePresentation) -> Dict[str, Any]:
    forbidden, cycles = forbidden_threads(p)
    return {
        "permitted": [_thread(t, p) for t in permitted_threads(p)],
        "forbidden": [_thread(t, p) for t in forbidden],
        "relation_cycles": [[p.quiver.arrow_label(a) for a in cycle] for cycle in cycles],
    }


def dumps(payload: Dict[str, Any], with_version: bool = False, indent: Optional[int] = None) -> str:
    if with_version:
        payload = {"version": __version__, **payload}
    indent = indent if indent is not None else get_settings().json_indent
    if indent is None:
        return json.dumps(payload, separators=(",", ":"), ensure_ascii=False)
    return json.dumps(payload, indent=indent, ensure_ascii=False)


def serialize_json(value: Any, p: Optional[GentlePresentation] = None,
                   with_version: bool = False, indent: Optional[int] = None) -> str:
    """Stable JSON text; pass the presentation to label trace threads"""
    return dumps(to_payload(value, p), with_version=with_version, indent=indent)


def presentation_from_json(text: str) -> GentlePresentation:
    data = json.loads(text)
    try:
        raw = RawQuiver(
            vertices=list(data["vertices"]),
            arrows=[(a["label"], a["source"], a["target"]) for a in data["arrows"]],
            relations=[(r["second"], r["first"]) for r in data.get("relations", [])],
            name=data.get("name", "quiver"),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"not a presentation document: missing {exc}")
    return build_presentation(raw)
