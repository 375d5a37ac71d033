"""
Export a presentation to graphviz' dot

Arrows are solid edges; each relation is a dotted, headless edge from the
start of its first arrow to the end of its second, labelled 'g*b'.

    dot -Tpng -O quiver.gv
"""

from .quiver_core import GentlePresentation


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(p: GentlePresentation) -> str:
    q = p.quiver
    lines = [f"digraph {_quote(q.name)} {{", "\trankdir=LR;", "\tnode [shape=circle];"]
    for label in q.vertex_labels:
        lines.append(f"\t{_quote(label)} [label={_quote(label)}];")
    for a in q.arrows:
        lines.append(
            f"\t{_quote(q.vertex_label(a.source))} -> {_quote(q.vertex_label(a.target))} "
            f"[label={_quote(a.label)}, style=solid];"
        )
    for r in p.sorted_relations():
        first, second = q.arrows[r.first], q.arrows[r.second]
        name = f"{second.label}*{first.label}"
        lines.append(
            f"\t{_quote(q.vertex_label(first.source))} -> {_quote(q.vertex_label(second.target))} "
            f"[label={_quote(name)}, style=dotted, arrowhead=none, constraint=false];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
