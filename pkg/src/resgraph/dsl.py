"""Line-oriented text format for weighted dual graphs.

::

    # D4 with a -3 center
    vertex c -3
    vertex a -2
    edge c a
    ...

or one shorthand statement::

    chain -2 -3 -2
    star -2 : [-3] [-3] [-2 -2]

Weights are written as self-intersections (negative integers).  Star arms
are listed from the center outward.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .errors import (
    Disconnected,
    DSLSyntaxError,
    DuplicateEdge,
    DuplicateVertex,
    EmptyGraph,
    GraphError,
    NonPositiveWeight,
    OutOfRange,
    SelfLoop,
    UnknownEndpoint,
)
from .graph import WeightedDualGraph, build_graph, chain_graph, star_graph

_TOKEN = re.compile(r"\[|\]|:|,|[^\s\[\]:,#]+")
_INT = re.compile(r"[+-]?\d+\Z")
_ID = re.compile(r"[^\s\[\]:,#]+\Z")


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    col: int


@dataclass(frozen=True)
class GraphDocument:
    source: str
    graph: WeightedDualGraph
    shorthand: Optional[str] = None  # "chain" or "star" when used


def _tokens(text: str) -> list[list[Token]]:
    out = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [Token(m.group(), ln, m.start() + 1) for m in _TOKEN.finditer(body)]
        if toks:
            out.append(toks)
    return out


def _end_of(tok: Token) -> tuple[int, int]:
    return tok.line, tok.col + len(tok.text)


def _selfint(tok: Token) -> int:
    if not _INT.match(tok.text):
        raise DSLSyntaxError(f"expected a self-intersection, got {tok.text!r}",
                             tok.line, tok.col)
    b = -int(tok.text)
    if b <= 0:
        raise _located(NonPositiveWeight(
            f"self-intersection {tok.text} must be negative", tok.text), tok)
    return b


def _located(exc: GraphError, tok: Token) -> GraphError:
    """A copy of ``exc`` whose message starts with the token position."""
    new = type(exc)(f"line {tok.line}, col {tok.col}: {exc}", exc.element)
    new.line, new.col = tok.line, tok.col
    return new


def _parse_chain(toks: list[Token]) -> WeightedDualGraph:
    if len(toks) < 2:
        raise DSLSyntaxError("chain needs at least one self-intersection", *_end_of(toks[0]))
    return chain_graph([_selfint(t) for t in toks[1:]])


def _parse_star(toks: list[Token]) -> WeightedDualGraph:
    if len(toks) < 2:
        raise DSLSyntaxError("star needs a center self-intersection", *_end_of(toks[0]))
    center = _selfint(toks[1])
    if len(toks) < 3 or toks[2].text != ":":
        where = _end_of(toks[1]) if len(toks) < 3 else (toks[2].line, toks[2].col)
        raise DSLSyntaxError("expected ':' after the center", *where)
    arms: list[list[int]] = []
    k = 3
    while k < len(toks):
        if toks[k].text != "[":
            raise DSLSyntaxError(f"expected '[', got {toks[k].text!r}", toks[k].line, toks[k].col)
        open_tok = toks[k]
        k += 1
        arm = []
        while k < len(toks) and toks[k].text != "]":
            if toks[k].text != ",":
                arm.append(_selfint(toks[k]))
            k += 1
        if k == len(toks):
            raise DSLSyntaxError("unclosed '['", open_tok.line, open_tok.col)
        if not arm:
            raise DSLSyntaxError("empty arm", open_tok.line, open_tok.col)
        arms.append(arm)
        k += 1
    if not arms:
        raise DSLSyntaxError("star needs at least one arm", *_end_of(toks[-1]))
    return star_graph(center, arms)


def parse_document(text: str) -> GraphDocument:
    lines = _tokens(text)
    if not lines:
        exc = EmptyGraph("no vertices", None)
        raise _located(exc, Token("", 1, 1))
    vertices: list[tuple[str, int]] = []
    vertex_tok: dict[str, Token] = {}
    edges: list[tuple[str, str]] = []
    edge_tok: list[tuple[Token, Token]] = []
    shorthand = None
    graph = None
    for toks in lines:
        kw = toks[0]
        if shorthand is not None or (kw.text in ("chain", "star") and (vertices or edges)):
            raise DSLSyntaxError("a chain or star statement must be the only statement",
                                 kw.line, kw.col)
        if kw.text == "vertex":
            if len(toks) != 3:
                where = (toks[3].line, toks[3].col) if len(toks) > 3 else _end_of(toks[-1])
                raise DSLSyntaxError("expected: vertex <id> <self-intersection>", *where)
            vid = toks[1]
            if not _ID.match(vid.text):
                raise DSLSyntaxError(f"bad vertex id {vid.text!r}", vid.line, vid.col)
            b = _selfint(toks[2])
            if vid.text in vertex_tok:
                first = vertex_tok[vid.text].line
                raise _located(DuplicateVertex(
                    f"duplicate vertex {vid.text!r} (first declared on line {first})",
                    vid.text), vid)
            vertex_tok[vid.text] = vid
            vertices.append((vid.text, b))
        elif kw.text == "edge":
            if len(toks) != 3:
                where = (toks[3].line, toks[3].col) if len(toks) > 3 else _end_of(toks[-1])
                raise DSLSyntaxError("expected: edge <id> <id>", *where)
            for t in toks[1:]:
                if not _ID.match(t.text):
                    raise DSLSyntaxError(f"bad vertex id {t.text!r}", t.line, t.col)
            edges.append((toks[1].text, toks[2].text))
            edge_tok.append((toks[1], toks[2]))
        elif kw.text == "chain":
            shorthand, graph = "chain", _parse_chain(toks)
        elif kw.text == "star":
            shorthand, graph = "star", _parse_star(toks)
        else:
            raise DSLSyntaxError(f"unknown statement {kw.text!r}", kw.line, kw.col)
    if graph is None:
        graph = _build(vertices, vertex_tok, edges, edge_tok)
    return GraphDocument(text, graph, shorthand)


def _build(vertices, vertex_tok, edges, edge_tok) -> WeightedDualGraph:
    if not vertices:
        first = edge_tok[0][0]
        raise _located(EmptyGraph("edges but no vertices", None), first)
    try:
        return build_graph(vertices, edges)
    except GraphError as exc:
        raise _located(exc, _locate(exc, vertex_tok, edges, edge_tok)) from None


def _locate(exc: GraphError, vertex_tok, edges, edge_tok) -> Token:
    el = exc.element
    if isinstance(exc, Disconnected):
        return vertex_tok[el]
    seen = set()
    for (u, v), (tu, tv) in zip(edges, edge_tok):
        if isinstance(exc, UnknownEndpoint) and el in (u, v):
            return tu if u == el else tv
        if isinstance(exc, SelfLoop) and u == v == el:
            return tu
        key = frozenset((u, v))
        if isinstance(exc, DuplicateEdge) and key in seen:
            return tu
        seen.add(key)
    return next(iter(vertex_tok.values()))


def parse_graph(text: str) -> WeightedDualGraph:
    return parse_document(text).graph


def emit(G: WeightedDualGraph) -> str:
    """Explicit ``vertex``/``edge`` text that parses back to ``G``."""
    for v in G.ids:
        if not _ID.match(v):
            raise OutOfRange(f"vertex id {v!r} cannot be written in the text format")
    lines = [f"vertex {v} {-b}" for v, b in zip(G.ids, G.weights)]
    lines += [f"edge {G.ids[i]} {G.ids[j]}" for i, j in G.edges]
    return "\n".join(lines) + "\n"
