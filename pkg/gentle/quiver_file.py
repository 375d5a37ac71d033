#!/usr/bin/env python3
"""
The .quiver text format

    # comments start with '#'
    quiver worked_example
    vertices: a b c
    arrow x: a -> b
    arrow y: b -> c
    rel y * x

`rel g * b` declares that b followed by g is zero. One declaration per
line; labels match [A-Za-z0-9_]+.
"""

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple, Union

from .errors import DuplicateDeclaration, QuiverSyntaxError, UndeclaredLabel
from .quiver_core import GentlePresentation, RawQuiver, build_presentation

logger = logging.getLogger(__name__)

_LABEL = re.compile(r"[A-Za-z0-9_]+")


@dataclass(frozen=True)
class Declared:
    label: str
    line: int
    col: int


@dataclass(frozen=True)
class ArrowDecl:
    label: str
    source: str
    target: str
    line: int
    col: int


@dataclass(frozen=True)
class RelationDecl:
    second: str
    first: str
    line: int
    col: int


@dataclass
class QuiverFile:
    name: str = "quiver"
    vertices: List[Declared] = field(default_factory=list)
    arrows: List[ArrowDecl] = field(default_factory=list)
    relations: List[RelationDecl] = field(default_factory=list)
    comments: List[Tuple[int, str]] = field(default_factory=list)

    def to_raw(self) -> RawQuiver:
        return RawQuiver(
            vertices=[v.label for v in self.vertices],
            arrows=[(a.label, a.source, a.target) for a in self.arrows],
            relations=[(r.second, r.first) for r in self.relations],
            name=self.name,
            arrow_locations=[f"line {a.line}" for a in self.arrows],
            relation_locations=[f"line {r.line}" for r in self.relations],
        )


class _LineScanner:
    def __init__(self, text: str, line: int):
        self.text = text
        self.line = line
        self.pos = 0

    def _skip_space(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def fail(self, message: str):
        raise QuiverSyntaxError(message, self.line, self.pos + 1)

    def label(self, what: str) -> Tuple[str, int]:
        self._skip_space()
        match = _LABEL.match(self.text, self.pos)
        if not match:
            self.fail(f"expected {what}")
        col = self.pos + 1
        self.pos = match.end()
        return match.group(0), col

    def symbol(self, sym: str):
        self._skip_space()
        if not self.text.startswith(sym, self.pos):
            self.fail(f"expected '{sym}'")
        self.pos += len(sym)

    def at_end(self) -> bool:
        self._skip_space()
        return self.pos >= len(self.text)

    def end(self):
        if not self.at_end():
            self.fail(f"unexpected '{self.text[self.pos]}'")


def parse_quiver_file(text: str) -> QuiverFile:
    """Parse .quiver text; errors carry 1-based line and column"""
    qf = QuiverFile()
    named = False
    seen_vertices, seen_arrows, seen_relations = {}, {}, set()

    for lineno, raw_line in enumerate(text.splitlines(), 1):
        content = raw_line.split("#", 1)[0].rstrip()
        if "#" in raw_line:
            qf.comments.append((lineno, raw_line[raw_line.index("#") + 1:].strip()))
        if not content.strip():
            continue

        scan = _LineScanner(content, lineno)
        keyword, col = scan.label("a declaration keyword")

        if keyword == "quiver":
            if named:
                raise QuiverSyntaxError("second 'quiver' line", lineno, col)
            if qf.vertices or qf.arrows or qf.relations:
                raise QuiverSyntaxError("'quiver' must come before any declaration", lineno, col)
            qf.name, _ = scan.label("a quiver name")
            scan.end()
            named = True

        elif keyword == "vertices":
            scan.symbol(":")
            while not scan.at_end():
                label, vcol = scan.label("a vertex label")
                if label in seen_vertices:
                    raise DuplicateDeclaration(label, lineno, vcol)
                seen_vertices[label] = vcol
                qf.vertices.append(Declared(label, lineno, vcol))

        elif keyword == "arrow":
            label, acol = scan.label("an arrow label")
            scan.symbol(":")
            src, scol = scan.label("a source vertex")
            scan.symbol("->")
            tgt, tcol = scan.label("a target vertex")
            scan.end()
            if label in seen_arrows:
                raise DuplicateDeclaration(label, lineno, acol)
            for vertex, vcol in ((src, scol), (tgt, tcol)):
                if vertex not in seen_vertices:
                    raise UndeclaredLabel(vertex, lineno, vcol)
            seen_arrows[label] = acol
            qf.arrows.append(ArrowDecl(label, src, tgt, lineno, acol))

        elif keyword == "rel":
            second, gcol = scan.label("an arrow label")
            scan.symbol("*")
            first, fcol = scan.label("an arrow label")
            scan.end()
            for arrow, acol in ((second, gcol), (first, fcol)):
                if arrow not in seen_arrows:
                    raise UndeclaredLabel(arrow, lineno, acol)
            if (second, first) in seen_relations:
                raise DuplicateDeclaration(f"{second} * {first}", lineno, col)
            seen_relations.add((second, first))
            qf.relations.append(RelationDecl(second, first, lineno, col))

        else:
            raise QuiverSyntaxError(f"unknown declaration '{keyword}'", lineno, col)

    return qf


def render_quiver_file(qf: QuiverFile) -> str:
    lines = [f"quiver {qf.name}"]
    if qf.vertices:
        lines.append("vertices: " + " ".join(v.label for v in qf.vertices))
    lines.extend(f"arrow {a.label}: {a.source} -> {a.target}" for a in qf.arrows)
    lines.extend(f"rel {r.second} * {r.first}" for r in qf.relations)
    return "\n".join(lines) + "\n"


def presentation_to_quiver_file(p: GentlePresentation) -> QuiverFile:
    q = p.quiver
    qf = QuiverFile(name=q.name)
    col = len("vertices: ") + 1
    for label in q.vertex_labels:
        qf.vertices.append(Declared(label, 2, col))
        col += len(label) + 1
    qf.arrows = [ArrowDecl(a.label, q.vertex_label(a.source), q.vertex_label(a.target), 3 + a.id, 7)
                 for a in q.arrows]
    base = 3 + q.num_arrows
    qf.relations = [RelationDecl(q.arrow_label(r.second), q.arrow_label(r.first), base + k, 1)
                    for k, r in enumerate(p.sorted_relations())]
    return qf


def load_presentation(source: Union[str, Path], text: Optional[str] = None) -> GentlePresentation:
    """Parse a .quiver file (or given text) and build the validated presentation"""
    if text is None:
        data = Path(source).read_bytes()
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            line = data[:exc.start].count(b"\n") + 1
            col = exc.start - data.rfind(b"\n", 0, exc.start)
            raise QuiverSyntaxError(f"byte 0x{data[exc.start]:02x} is not valid UTF-8", line, col) from None
    qf = parse_quiver_file(text)
    if qf.name == "quiver" and isinstance(source, (str, Path)) and str(source).endswith(".quiver"):
        qf.name = Path(source).stem
    logger.debug(f"Parsed {source}: {len(qf.vertices)} vertices, {len(qf.arrows)} arrows, {len(qf.relations)} relations")
    return build_presentation(qf.to_raw())
