"""Line-based graph files.

Grammar, one declaration per line::

    # comment
    vertex <id>
    edge <id> <source> <range>

Identifiers start with a letter or underscore and continue with letters,
digits, ``_`` or ``'``. Endpoints must be declared before the edge that uses
them. Blank lines and trailing ``#`` comments are ignored; CRLF is accepted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path as FsPath

from .errors import DuplicateId, ParseError, UnknownEndpoint
from .graph import Edge, Graph

ID_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


@dataclass
class GraphDocument:
    graph: Graph
    vertex_lines: dict = field(default_factory=dict)
    edge_lines: dict = field(default_factory=dict)
    path: str | None = None


def parse_graph(text: str, path: str | None = None) -> GraphDocument:
    vertices: list[str] = []
    edges: list[Edge] = []
    vlines: dict = {}
    elines: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind, args = tokens[0], tokens[1:]
        for tok in args:
            if not ID_RE.match(tok):
                raise ParseError(lineno, f"invalid identifier {tok!r}")
        if kind == "vertex":
            if len(args) != 1:
                raise ParseError(lineno, "expected 'vertex <id>'")
            (vid,) = args
            if vid in vlines:
                raise DuplicateId(lineno, f"vertex {vid!r} already declared on line {vlines[vid]}")
            vlines[vid] = lineno
            vertices.append(vid)
        elif kind == "edge":
            if len(args) != 3:
                raise ParseError(lineno, "expected 'edge <id> <source> <range>'")
            eid, src, rng = args
            if eid in elines:
                raise DuplicateId(lineno, f"edge {eid!r} already declared on line {elines[eid]}")
            for end in (src, rng):
                if end not in vlines:
                    raise UnknownEndpoint(lineno, f"edge {eid!r} uses undeclared vertex {end!r}")
            elines[eid] = lineno
            edges.append(Edge(eid, src, rng))
        else:
            raise ParseError(lineno, f"unknown declaration {kind!r}")
    return GraphDocument(Graph(tuple(vertices), tuple(edges)), vlines, elines, path)


def serialize_graph(g: Graph) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {e.id} {e.source} {e.range}" for e in g.edges]
    return "\n".join(lines) + ("\n" if lines else "")


def load_graph(path) -> GraphDocument:
    p = FsPath(path)
    return parse_graph(p.read_text(encoding="utf-8"), str(p))


def graph_to_dict(g: Graph) -> dict:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}


FIXTURE_NAMES = (
    "toeplitz",
    "double_loop",
    "chain2",
    "chain3",
    "fork",
    "single",
    "empty",
    "loop",
    "two_loops",
    "rose2",
    "diamond",
    "cycle_chain",
)


def fixture(name: str) -> Graph:
    """One of the bundled example graphs, by name."""
    text = resources.files("lpakit.data").joinpath(f"{name}.graph").read_text(encoding="utf-8")
    return parse_graph(text, f"{name}.graph").graph


def fixtures() -> dict:
    return {name: fixture(name) for name in FIXTURE_NAMES}
