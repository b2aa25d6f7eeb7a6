import itertools

import pytest

from lpakit.fields import Polynomial, monic_polynomials
from lpakit.graph import Graph
from lpakit.graphio import fixture, fixtures

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def toeplitz():
    return fixture("toeplitz")


@pytest.fixture
def double_loop():
    return fixture("double_loop")


@pytest.fixture
def all_fixtures():
    return fixtures()


def G(vertices, edges=()):
    return Graph.build(vertices, edges)


def brute_paths(g: Graph):
    """Every path, grown forward one length at a time by scanning the edge list.

    Lengths are capped at |V|, which is exhaustive for acyclic graphs.
    """
    level = [(v, (), v) for v in g.vertices]
    out = [(s, es) for s, es, _ in level]
    for _ in range(len(g.vertices)):
        level = [(s, es + (e.id,), e.range) for s, es, end in level for e in g.edges if e.source == end]
        out += [(s, es) for s, es, _ in level]
    return out


def brute_path_pairs(g: Graph):
    """Pairs of paths into a common sink, from the blind path list."""
    sinks = {v for v in g.vertices if not any(e.source == v for e in g.edges)}

    def end(p):
        start, edges = p
        return g.r(edges[-1]) if edges else start

    by_end = {}
    for p in brute_paths(g):
        by_end.setdefault(end(p), []).append(p)
    return sum(len(by_end.get(v, [])) ** 2 for v in sinks)


def brute_irreducibles(k, degree):
    """Monic polynomials of ``degree`` that are not a product of two lower-degree monics."""
    reducible = set()
    for d in range(1, degree // 2 + 1):
        for a in monic_polynomials(k, d):
            for b in monic_polynomials(k, degree - d):
                reducible.add(a * b)
    return [f for f in monic_polynomials(k, degree) if f not in reducible]
