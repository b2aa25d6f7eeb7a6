"""Finite directed graphs and the vertex-set surgeries used to decompose them.

A :class:`Graph` is an immutable value ``(vertices, edges)`` where every edge
is an ``(id, source, range)`` triple. Vertex subsets are plain ``frozenset``
objects of vertex identifiers; every operation checks them against the graph
it is given.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import LPAError, NotHereditary, NotSaturated, UnknownVertex

__all__ = [
    "Edge",
    "Graph",
    "InvalidGraph",
    "Path",
    "sources",
    "sinks",
    "is_hereditary",
    "is_saturated",
    "hereditary_closure",
    "saturated_closure",
    "full_closure",
    "restriction",
    "quotient",
    "eliminate_sources",
    "sink_source_free_core",
    "is_acyclic",
    "reachable_from",
]


class InvalidGraph(LPAError, ValueError):
    pass


class Edge(NamedTuple):
    id: str
    source: str
    range: str


@dataclass(frozen=True)
class Graph:
    """A finite directed graph with named vertices and edges.

    Insertion order of both vertices and edges is preserved and is part of
    equality. ``provenance`` records the surgeries that produced the graph and
    does not take part in comparisons.
    """

    vertices: tuple[str, ...] = ()
    edges: tuple[Edge, ...] = ()
    provenance: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidGraph("duplicate vertex identifier")
        if len({e.id for e in self.edges}) != len(self.edges):
            raise InvalidGraph("duplicate edge identifier")
        vs = set(self.vertices)
        for e in self.edges:
            if e.source not in vs or e.range not in vs:
                raise InvalidGraph(f"edge {e.id} has an endpoint outside the vertex set")

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str, str]] = ()) -> "Graph":
        return cls(tuple(vertices), tuple(Edge(*e) for e in edges))

    @cached_property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    @cached_property
    def edge_map(self) -> dict:
        return {e.id: e for e in self.edges}

    @cached_property
    def out_edges(self) -> dict:
        """Map each vertex to the tuple of edges it emits, in edge order."""
        out = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.source].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def in_edges(self) -> dict:
        inc = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.range].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    def s(self, edge_id: str) -> str:
        return self.edge_map[edge_id].source

    def r(self, edge_id: str) -> str:
        return self.edge_map[edge_id].range

    def is_empty(self) -> bool:
        return not self.vertices

    def __len__(self):
        return len(self.vertices)

    def derive(self, vertices, edges, op: str, **args) -> "Graph":
        """Return a new graph that remembers it came from ``op`` applied to self."""
        args = {k: sorted(v) if isinstance(v, (set, frozenset)) else v for k, v in args.items()}
        return Graph(tuple(vertices), tuple(edges), self.provenance + ((op, args),))

    def check_subset(self, h: Iterable[str]) -> frozenset:
        h = frozenset(h)
        unknown = h - self.vertex_set
        if unknown:
            raise UnknownVertex(f"unknown vertices {sorted(unknown)}")
        return h


class Path(NamedTuple):
    """A path given by its start vertex and a composable edge sequence.

    The trivial path at ``v`` is ``Path(v, ())``.
    """

    start: str
    edges: tuple = ()

    def end(self, g: Graph) -> str:
        return g.r(self.edges[-1]) if self.edges else self.start

    def is_valid(self, g: Graph) -> bool:
        if self.start not in g.vertex_set:
            return False
        here = self.start
        for eid in self.edges:
            e = g.edge_map.get(eid)
            if e is None or e.source != here:
                return False
            here = e.range
        return True

    def __len__(self):
        return len(self.edges)


def sources(g: Graph) -> frozenset:
    """Vertices receiving no edge."""
    return frozenset(v for v in g.vertices if not g.in_edges[v])


def sinks(g: Graph) -> frozenset:
    """Vertices emitting no edge."""
    return frozenset(v for v in g.vertices if not g.out_edges[v])


def is_hereditary(g: Graph, h) -> bool:
    h = g.check_subset(h)
    return all(e.range in h for e in g.edges if e.source in h)


def is_saturated(g: Graph, x) -> bool:
    x = g.check_subset(x)
    for y in g.vertices:
        out = g.out_edges[y]
        if y not in x and out and all(e.range in x for e in out):
            return False
    return True


def reachable_from(g: Graph, start) -> frozenset:
    """All vertices at the end of some path (trivial paths included) from ``start``."""
    seen = set(g.check_subset(start))
    stack = list(seen)
    while stack:
        v = stack.pop()
        for e in g.out_edges[v]:
            if e.range not in seen:
                seen.add(e.range)
                stack.append(e.range)
    return frozenset(seen)


hereditary_closure = reachable_from


def saturated_closure(g: Graph, h) -> frozenset:
    """Hereditary saturated closure of a hereditary set.

    Iterates ``L_n = L_{n-1} | {y : y emits edges, all ranges of y in L_{n-1}}``
    starting from ``h`` until nothing is added.
    """
    h = g.check_subset(h)
    if not is_hereditary(g, h):
        raise NotHereditary("H must be hereditary to take its saturated closure")
    current = set(h)
    while True:
        layer = {
            y
            for y in g.vertices
            if y not in current
            and g.out_edges[y]
            and all(e.range in current for e in g.out_edges[y])
        }
        if not layer:
            return frozenset(current)
        current |= layer


def full_closure(g: Graph, h) -> frozenset:
    """Smallest hereditary saturated set containing an arbitrary vertex set."""
    return saturated_closure(g, hereditary_closure(g, h))


def restriction(g: Graph, h) -> Graph:
    """The graph on ``h`` keeping every edge that starts in ``h``."""
    h = g.check_subset(h)
    if not is_hereditary(g, h):
        raise NotHereditary("H must be hereditary to form the restriction graph")
    return g.derive(
        [v for v in g.vertices if v in h],
        [e for e in g.edges if e.source in h],
        "restriction",
        h=h,
    )


def quotient(g: Graph, x) -> Graph:
    """The graph on the complement of ``x`` keeping edges whose range avoids ``x``."""
    x = g.check_subset(x)
    if not is_hereditary(g, x):
        raise NotHereditary("X must be hereditary to form the quotient graph")
    if not is_saturated(g, x):
        raise NotSaturated("X must be saturated to form the quotient graph")
    return g.derive(
        [v for v in g.vertices if v not in x],
        [e for e in g.edges if e.range not in x],
        "quotient",
        x=x,
    )


def _drop_vertices(g: Graph, gone: frozenset, op: str) -> Graph:
    return g.derive(
        [v for v in g.vertices if v not in gone],
        [e for e in g.edges if e.source not in gone and e.range not in gone],
        op,
        removed=gone,
    )


def eliminate_sources(g: Graph) -> Graph:
    """Repeatedly delete vertices that are sources but not sinks, with their edges."""
    while True:
        snk = sinks(g)
        gone = frozenset(v for v in sources(g) if v not in snk)
        if not gone:
            return g
        g = _drop_vertices(g, gone, "eliminate_sources")


def sink_source_free_core(g: Graph) -> Graph:
    """Quotient by the closure of the sinks, then strip sources until none remain.

    Isolated vertices count as sinks and disappear in the first step.
    """
    core = quotient(g, saturated_closure(g, sinks(g)))
    return eliminate_sources(core)


def is_acyclic(g: Graph) -> bool:
    indeg = {v: len(g.in_edges[v]) for v in g.vertices}
    ready = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for e in g.out_edges[v]:
            indeg[e.range] -= 1
            if indeg[e.range] == 0:
                ready.append(e.range)
    return seen == len(g.vertices)
