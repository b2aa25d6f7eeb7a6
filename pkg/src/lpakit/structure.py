"""Cycles and the decomposition of a graph algebra into simpler pieces.

Covers simple-cycle enumeration, the reachability pre-order on cycles, the
"at most one cycle through each vertex" condition, recollement triples
``(E/closure(H), E, E_H)`` and the stratification of a graph by repeatedly
quotienting out a minimal cycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from .algebra import (
    AlgebraElement,
    acyclic_dimension,
    corner_dimension,
    ideal_dimension,
    quotient_dimension,
)
from .errors import ConditionViolated, EmptySet, NotHereditary
from .fields import QQ, FieldSpec
from .graph import (
    Graph,
    eliminate_sources,
    is_acyclic,
    is_hereditary,
    quotient,
    reachable_from,
    restriction,
    saturated_closure,
    sink_source_free_core,
    sinks,
)


@dataclass(frozen=True, order=True)
class Cycle:
    """A simple closed path, rotated so its smallest edge id comes first."""

    edges: tuple
    vertices: tuple = field(compare=False)

    @classmethod
    def from_edges(cls, g: Graph, edges) -> "Cycle":
        edges = tuple(edges)
        if not edges:
            raise ValueError("a cycle needs at least one edge")
        i = edges.index(min(edges))
        edges = edges[i:] + edges[:i]
        verts = tuple(g.s(e) for e in edges)
        for a, b in zip(edges, edges[1:] + edges[:1]):
            if g.r(a) != g.s(b):
                raise ValueError("edges do not form a closed path")
        if len(set(verts)) != len(verts):
            raise ValueError("cycle repeats a vertex")
        return cls(edges, verts)

    def __str__(self):
        return ".".join(self.edges)

    def exits(self, g: Graph) -> list:
        """Edges leaving the cycle: source on it, range off it."""
        on = set(self.vertices)
        return [e.id for v in self.vertices for e in g.out_edges[v] if e.range not in on]


def enumerate_cycles(g: Graph) -> list[Cycle]:
    """All simple cycles, one per rotation class, sorted by edge sequence.

    Each cycle is found exactly once by only extending from its earliest
    vertex (in insertion order) through later vertices.
    """
    index = {v: i for i, v in enumerate(g.vertices)}
    found = []
    for start in g.vertices:
        lo = index[start]
        on_path = {start}

        def dfs(here, path):
            for e in g.out_edges[here]:
                w = e.range
                if w == start:
                    found.append(Cycle.from_edges(g, path + [e.id]))
                elif index[w] > lo and w not in on_path:
                    on_path.add(w)
                    dfs(w, path + [e.id])
                    on_path.discard(w)

        dfs(start, [])
    return sorted(found)


def _cycle_membership_ok(g: Graph, cycles) -> bool:
    count: dict = {}
    for c in cycles:
        for v in c.vertices:
            count[v] = count.get(v, 0) + 1
    return all(n <= 1 for n in count.values())


def _scc_ok(g: Graph) -> bool:
    """Every strongly connected component carries at most as many edges as vertices."""
    dg = nx.MultiDiGraph()
    dg.add_nodes_from(g.vertices)
    dg.add_edges_from((e.source, e.range) for e in g.edges)
    for comp in nx.strongly_connected_components(dg):
        internal = sum(1 for v in comp for e in g.out_edges[v] if e.range in comp)
        if internal > len(comp):
            return False
    return True


def one_cycle_condition(g: Graph, method: str = "both") -> bool:
    """True iff no vertex lies on two distinct simple cycles.

    ``method="cycles"`` counts cycle memberships per vertex, ``"scc"`` checks
    that each strongly connected component is a point or a single cycle, and
    ``"both"`` computes the two and insists they agree.
    """
    if method == "cycles":
        return _cycle_membership_ok(g, enumerate_cycles(g))
    if method == "scc":
        return _scc_ok(g)
    a, b = _cycle_membership_ok(g, enumerate_cycles(g)), _scc_ok(g)
    if a != b:
        raise AssertionError("cycle-count and component checks disagree")
    return a


@dataclass(frozen=True)
class CyclePreorder:
    cycles: tuple
    matrix: tuple  # matrix[i][j] is True iff cycles[i] >= cycles[j]

    def ge(self, c1: Cycle, c2: Cycle) -> bool:
        return self.matrix[self.cycles.index(c1)][self.cycles.index(c2)]

    def is_antisymmetric(self) -> bool:
        n = len(self.cycles)
        return not any(
            self.matrix[i][j] and self.matrix[j][i] for i in range(n) for j in range(n) if i != j
        )


def cycle_preorder(g: Graph, cycles=None) -> CyclePreorder:
    """``c1 >= c2`` iff a path runs from a vertex of ``c1`` to a vertex of ``c2``."""
    cycles = tuple(enumerate_cycles(g) if cycles is None else cycles)
    reach = [reachable_from(g, c.vertices) for c in cycles]
    matrix = tuple(
        tuple(any(v in reach[i] for v in cycles[j].vertices) for j in range(len(cycles)))
        for i in range(len(cycles))
    )
    return CyclePreorder(cycles, matrix)


def _require_condition(g):
    if not one_cycle_condition(g):
        raise ConditionViolated("every vertex must lie on at most one cycle")


def minimal_cycles(g: Graph) -> list[Cycle]:
    """Cycles that reach no other cycle."""
    _require_condition(g)
    order = cycle_preorder(g)
    n = len(order.cycles)
    mins = [
        order.cycles[i]
        for i in range(n)
        if not any(order.matrix[i][j] for j in range(n) if j != i)
    ]
    if not sinks(g):
        for c in mins:
            assert is_hereditary(g, c.vertices), f"minimal cycle {c} has an exit"
    return mins


@dataclass
class RecollementTriple:
    """Graph data of the recollement ``L(E/closure(H)) | L(E) | L(E_H)``."""

    left: Graph
    middle: Graph
    right: Graph
    h: frozenset
    h_closure: frozenset
    corner_idempotent: AlgebraElement
    certificate: dict | None = None

    def check(self) -> bool:
        return (
            self.right == restriction(self.middle, self.h)
            and self.h_closure == saturated_closure(self.middle, self.h)
            and self.left == quotient(self.middle, self.h_closure)
        )


def recollement_triple(g: Graph, h, k: FieldSpec = QQ) -> RecollementTriple:
    """Assemble ``(E/closure(H), E, E_H)`` with ``p_H``.

    For acyclic ``g`` a dimension certificate is attached: the corner
    ``p_H L(E) p_H`` has the dimension of ``L(E_H)``, and ideal plus quotient
    dimensions add up to ``dim L(E)``.
    """
    h = g.check_subset(h)
    if not h:
        raise EmptySet("H must be nonempty")
    if not is_hereditary(g, h):
        raise NotHereditary("H must be hereditary for the recollement to exist")
    closure = saturated_closure(g, h)
    left, right = quotient(g, closure), restriction(g, h)
    cert = None
    if is_acyclic(g):
        dim_e = acyclic_dimension(g)
        corner = corner_dimension(g, h)
        ideal = ideal_dimension(g, h)
        cert = {
            "dim_L(E)": dim_e,
            "corner_dimension": corner,
            "dim_L(E_H)": acyclic_dimension(right),
            "ideal_dimension": ideal,
            "ideal_dimension_closure": ideal_dimension(g, closure),
            "quotient_dimension": quotient_dimension(g, h),
            "dim_L(E/closure)": acyclic_dimension(left),
        }
        cert["corner_identity"] = cert["corner_dimension"] == cert["dim_L(E_H)"]
        cert["quotient_identity"] = dim_e == ideal + cert["dim_L(E/closure)"]
        cert["ideal_closure_identity"] = ideal == cert["ideal_dimension_closure"]
    return RecollementTriple(left, g, right, h, closure, AlgebraElement.idempotent(g, k, h), cert)


@dataclass
class CycleLayer:
    cycle: Cycle
    graph_before: Graph
    closure: frozenset
    morita_class: str = "Laurent"


@dataclass
class StratificationReport:
    sink_layer: int
    sinks: tuple
    core: Graph
    cycle_layers: list
    chain: list
    choice_rule: str = "least"

    @property
    def final_graph(self) -> Graph:
        return self.chain[-1]


def stratify(g: Graph, pick: str = "least") -> StratificationReport:
    """Peel off minimal cycles one at a time.

    Start from the sink- and source-free core; at each step take a minimal
    cycle (canonically least, or greatest with ``pick="greatest"``), quotient
    by the closure of its vertices and strip any new sources.
    """
    _require_condition(g)
    core = sink_source_free_core(g)
    chain = [core]
    layers = []
    b = core
    while not b.is_empty():
        mins = minimal_cycles(b)
        if not mins:
            raise AssertionError("nonempty sink-free graph without a minimal cycle")
        c = min(mins) if pick == "least" else max(mins)
        assert is_hereditary(b, c.vertices)
        closure = saturated_closure(b, c.vertices)
        layers.append(CycleLayer(c, b, closure))
        b = eliminate_sources(quotient(b, closure))
        chain.append(b)
    sk = tuple(sorted(sinks(g)))
    return StratificationReport(len(sk), sk, core, layers, chain, pick)


@dataclass
class KuhnReport:
    whole: int
    left: int
    right: int

    @property
    def passed(self) -> bool:
        return self.whole == self.left + self.right

    def as_dict(self):
        return {"L(E)": self.whole, "L(E/closure)": self.left, "L(E_H)": self.right, "passed": self.passed}


def kuhn_count_check(g: Graph, h) -> KuhnReport:
    """Simple counts of ``L(E)``, ``L(E/closure(H))`` and ``L(E_H)`` for acyclic ``E``.

    Each count is the number of matrix blocks of the corresponding algebra.
    """
    from .simples import matrix_decomposition

    h = g.check_subset(h)
    if not h:
        raise EmptySet("H must be nonempty")
    if not is_hereditary(g, h):
        raise NotHereditary("H must be hereditary")
    whole = len(matrix_decomposition(g).blocks)
    left = len(matrix_decomposition(quotient(g, saturated_closure(g, h))).blocks)
    right = len(matrix_decomposition(restriction(g, h)).blocks)
    return KuhnReport(whole, left, right)
