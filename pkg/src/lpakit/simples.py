"""Counting simple modules.

For an acyclic graph the algebra is a product of full matrix algebras, one
per sink; :func:`matrix_decomposition` computes the block sizes. For graphs
with at most one cycle through each vertex, :func:`simple_census` lists the
labels of simple modules: one per sink, plus one per (cycle, irreducible
Laurent polynomial) pair. The census enumerates labels only; it never builds
the modules, and it does not distinguish left from right.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import acyclic_basis, path_counts
from .errors import ConditionViolated
from .fields import FieldSpec, Polynomial, enumerate_laurent_irreducibles
from .graph import Graph, sinks
from .structure import Cycle, enumerate_cycles, one_cycle_condition


@dataclass
class MatrixDecomposition:
    blocks: list  # (sink, size) pairs sorted by sink
    total_dimension: int

    def as_dict(self):
        return {
            "blocks": [{"sink": v, "size": n} for v, n in self.blocks],
            "total_dimension": self.total_dimension,
        }


def matrix_decomposition(g: Graph, cross_check: bool = False) -> MatrixDecomposition:
    """Block size at each sink = number of paths ending there.

    With ``cross_check`` the total is compared against an explicit
    enumeration of the monomial basis.
    """
    n = path_counts(g)
    blocks = [(v, n[v]) for v in sorted(sinks(g))]
    total = sum(size * size for _, size in blocks)
    if cross_check and total != len(acyclic_basis(g)):
        raise AssertionError("block sizes disagree with the enumerated basis")
    return MatrixDecomposition(blocks, total)


@dataclass
class SimpleCensus:
    field: str
    sink_labels: list
    cycles: list
    polynomials: list | None  # None over the rationals
    max_degree: int | None
    cycle_labels: list = field(default_factory=list)

    @property
    def symbolic(self) -> bool:
        return self.polynomials is None

    @property
    def count(self) -> int | None:
        """Total number of labels, or ``None`` when the list is infinite."""
        if self.polynomials is None:
            return len(self.sink_labels) if not self.cycles else None
        return len(self.sink_labels) + len(self.cycle_labels)

    def labels(self) -> list:
        out = [("sink", v) for v in self.sink_labels]
        out += [("cycle", str(c), str(f)) for c, f in self.cycle_labels]
        return out

    def description(self) -> str:
        parts = [f"{len(self.sink_labels)} sink label(s)"]
        if self.cycles:
            if self.symbolic:
                parts.append(
                    f"{len(self.cycles)} cycle(s) x every irreducible polynomial of {self.field}[x,x^-1]"
                )
            else:
                parts.append(
                    f"{len(self.cycles)} cycle(s) x {len(self.polynomials)} irreducible(s) of degree <= {self.max_degree}"
                )
        return " + ".join(parts)

    def as_dict(self):
        return {
            "field": self.field,
            "max_degree": self.max_degree,
            "sink_labels": list(self.sink_labels),
            "cycles": [str(c) for c in self.cycles],
            "polynomials": None if self.polynomials is None else [str(f) for f in self.polynomials],
            "cycle_labels": [[str(c), str(f)] for c, f in self.cycle_labels],
            "symbolic": self.symbolic,
            "count": self.count,
            "description": self.description(),
        }


def simple_census(g: Graph, k: FieldSpec, max_degree: int = 3) -> SimpleCensus:
    """Labels ``sinks + cycles x irreducibles`` for the simple modules of ``L_K(E)``.

    Over a prime field the irreducibles are enumerated up to ``max_degree``;
    over the rationals they are described symbolically.
    """
    if not one_cycle_condition(g):
        raise ConditionViolated("every vertex must lie on at most one cycle")
    sink_labels = sorted(sinks(g))
    cycles: list[Cycle] = enumerate_cycles(g)
    if not k.is_finite:
        return SimpleCensus(k.name, sink_labels, cycles, None, None)
    polys: list[Polynomial] = enumerate_laurent_irreducibles(k, max_degree)
    labels = [(c, f) for c in cycles for f in polys]
    return SimpleCensus(k.name, sink_labels, cycles, polys, max_degree, labels)
