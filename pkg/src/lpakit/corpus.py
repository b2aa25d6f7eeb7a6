"""Seeded graph corpora and brute-force oracles for property checks."""

from __future__ import annotations

import itertools
import random

from .graph import Edge, Graph, is_hereditary, is_saturated

DEFAULT_SEED = 20240101


def random_graph(rng: random.Random, max_vertices: int = 6, max_edges: int = 10, min_vertices: int = 1) -> Graph:
    n = rng.randint(min_vertices, max_vertices)
    vs = [f"v{i}" for i in range(n)]
    m = rng.randint(0, max_edges)
    es = [Edge(f"e{j}", rng.choice(vs), rng.choice(vs)) for j in range(m)]
    return Graph(tuple(vs), tuple(es))


def random_acyclic_graph(rng: random.Random, max_vertices: int = 8, max_edges: int = 12) -> Graph:
    """Edges only go forward in a shuffled vertex order; parallel edges allowed."""
    n = rng.randint(1, max_vertices)
    vs = [f"v{i}" for i in range(n)]
    order = vs[:]
    rng.shuffle(order)
    es = []
    if n > 1:
        for j in range(rng.randint(0, max_edges)):
            a, b = sorted(rng.sample(range(n), 2))
            es.append(Edge(f"e{j}", order[a], order[b]))
    return Graph(tuple(vs), tuple(es))


def random_one_cycle_graph(rng: random.Random, max_blocks: int = 6, max_cycle: int = 3, max_links: int = 8) -> Graph:
    """Random graph in which every vertex lies on at most one cycle.

    Built from blocks (single vertices or simple cycles) arranged in a random
    order, with extra edges only running forward between blocks.
    """
    blocks: list[list[str]] = []
    vs: list[str] = []
    es: list[Edge] = []
    for b in range(rng.randint(1, max_blocks)):
        if rng.random() < 0.5:
            size = rng.randint(1, max_cycle)
            cyc = [f"c{b}_{i}" for i in range(size)]
            vs.extend(cyc)
            for i, v in enumerate(cyc):
                es.append(Edge(f"k{b}_{i}", v, cyc[(i + 1) % size]))
            blocks.append(cyc)
        else:
            v = f"p{b}"
            vs.append(v)
            blocks.append([v])
    if len(blocks) > 1:
        for j in range(rng.randint(0, max_links)):
            i1, i2 = sorted(rng.sample(range(len(blocks)), 2))
            es.append(Edge(f"l{j}", rng.choice(blocks[i1]), rng.choice(blocks[i2])))
    perm = vs[:]
    rng.shuffle(perm)
    return Graph(tuple(perm), tuple(es))


def exhaustive_small_graphs(max_vertices: int = 3):
    """Every graph on 1..max_vertices vertices with at most one edge per ordered pair (loops included)."""
    for n in range(1, max_vertices + 1):
        vs = tuple(f"v{i}" for i in range(n))
        pairs = [(a, b) for a in vs for b in vs]
        for mask in range(1 << len(pairs)):
            es = tuple(
                Edge(f"e{i}", a, b) for i, (a, b) in enumerate(pairs) if mask >> i & 1
            )
            yield Graph(vs, es)


def closure_corpus(seed: int = DEFAULT_SEED, random_count: int = 400):
    """All graphs on up to 3 vertices plus seeded random graphs on 4 to 6 vertices."""
    yield from exhaustive_small_graphs(3)
    rng = random.Random(seed)
    for _ in range(random_count):
        yield random_graph(rng, max_vertices=6, max_edges=12, min_vertices=4)


def acyclic_corpus(seed: int = DEFAULT_SEED, count: int = 200) -> list[Graph]:
    rng = random.Random(seed)
    return [random_acyclic_graph(rng) for _ in range(count)]


def one_cycle_corpus(seed: int = DEFAULT_SEED, count: int = 200) -> list[Graph]:
    rng = random.Random(seed)
    return [random_one_cycle_graph(rng) for _ in range(count)]


def all_subsets(g: Graph):
    vs = g.vertices
    for r in range(len(vs) + 1):
        for combo in itertools.combinations(vs, r):
            yield frozenset(combo)


def hereditary_subsets(g: Graph) -> list[frozenset]:
    return [h for h in all_subsets(g) if is_hereditary(g, h)]


def brute_force_closure(g: Graph, h) -> frozenset:
    """Smallest hereditary and saturated superset of ``h``, by exhaustive search."""
    h = frozenset(h)
    closed = [x for x in all_subsets(g) if h <= x and is_hereditary(g, x) and is_saturated(g, x)]
    best = min(closed, key=len)
    # minimal in the inclusion order, not only by size
    assert all(best <= x for x in closed)
    return best
