import random

import pytest
from hypothesis import given, settings, strategies as st

from lpakit.corpus import brute_force_closure, hereditary_subsets, random_graph
from lpakit.errors import NotHereditary, NotSaturated, UnknownVertex
from lpakit.graph import (
    Graph,
    InvalidGraph,
    Path,
    eliminate_sources,
    full_closure,
    is_acyclic,
    is_hereditary,
    is_saturated,
    quotient,
    restriction,
    saturated_closure,
    sink_source_free_core,
    sinks,
    sources,
)

from conftest import G

CHAIN2 = G(["v", "w"], [("f", "v", "w")])
CHAIN3 = G(["v1", "v2", "v3"], [("a", "v1", "v2"), ("b", "v2", "v3")])
LOOP_U = G(["u"], [("e", "u", "u")])


def test_sources_and_sinks(toeplitz):
    assert sinks(toeplitz) == {"w"}
    assert sources(toeplitz) == set()
    iso = G(["v"])
    assert sources(iso) == sinks(iso) == {"v"}
    assert sources(CHAIN3) == {"v1"} and sinks(CHAIN3) == {"v3"}


def test_graph_validation():
    with pytest.raises(InvalidGraph):
        G(["a", "a"])
    with pytest.raises(InvalidGraph):
        G(["a"], [("e", "a", "b")])
    with pytest.raises(InvalidGraph):
        G(["a"], [("e", "a", "a"), ("e", "a", "a")])


def test_paths(toeplitz):
    assert Path("u", ("e", "e", "f")).is_valid(toeplitz)
    assert not Path("u", ("f", "e")).is_valid(toeplitz)
    assert Path("w").end(toeplitz) == "w"
    assert Path("u", ("e", "f")).end(toeplitz) == "w"


def test_hereditary(toeplitz):
    assert is_hereditary(toeplitz, {"w"})
    assert not is_hereditary(toeplitz, {"u"})
    assert is_hereditary(toeplitz, set())
    assert is_hereditary(toeplitz, toeplitz.vertices)
    with pytest.raises(UnknownVertex):
        is_hereditary(toeplitz, {"nope"})


def test_saturated(toeplitz):
    assert not is_saturated(CHAIN2, {"w"})
    assert is_saturated(toeplitz, {"w"})
    assert is_saturated(CHAIN2, CHAIN2.vertices)


def test_saturated_closure_examples(toeplitz):
    assert saturated_closure(toeplitz, {"w"}) == {"w"}
    assert saturated_closure(CHAIN2, {"w"}) == {"v", "w"}
    assert saturated_closure(CHAIN3, {"v3"}) == {"v1", "v2", "v3"}
    assert saturated_closure(toeplitz, toeplitz.vertices) == set(toeplitz.vertices)
    # the same values from the exhaustive oracle
    assert brute_force_closure(toeplitz, {"w"}) == {"w"}
    assert brute_force_closure(CHAIN2, {"w"}) == {"v", "w"}
    assert brute_force_closure(CHAIN3, {"v3"}) == {"v1", "v2", "v3"}


def test_closure_rejects_non_hereditary(toeplitz):
    with pytest.raises(NotHereditary):
        saturated_closure(toeplitz, {"u"})
    assert full_closure(toeplitz, {"u"}) == {"u", "w"}


def test_restriction(toeplitz, double_loop):
    r = restriction(toeplitz, {"w"})
    assert r.vertices == ("w",) and r.edges == ()
    assert restriction(toeplitz, toeplitz.vertices) == toeplitz
    r2 = restriction(double_loop, {"w"})
    assert r2 == G(["w"], [("g", "w", "w")])
    with pytest.raises(NotHereditary):
        restriction(toeplitz, {"u"})


def test_quotient(toeplitz):
    assert quotient(toeplitz, {"w"}) == LOOP_U
    assert quotient(toeplitz, set()) == toeplitz
    assert quotient(CHAIN2, {"v", "w"}).is_empty()
    with pytest.raises(NotSaturated):
        quotient(CHAIN2, {"w"})
    with pytest.raises(NotHereditary):
        quotient(toeplitz, {"u"})


def test_provenance_is_recorded_but_not_compared(toeplitz):
    q = quotient(toeplitz, {"w"})
    assert q.provenance == (("quotient", {"x": ["w"]}),)
    assert q == LOOP_U


def test_core(toeplitz, double_loop):
    assert sink_source_free_core(toeplitz) == LOOP_U
    assert sink_source_free_core(CHAIN3).is_empty()
    assert sink_source_free_core(double_loop) == double_loop
    # a source feeding a loop is stripped; the isolated vertex is a sink
    g = G(["s", "l", "i"], [("a", "s", "l"), ("b", "l", "l")])
    assert sink_source_free_core(g) == G(["l"], [("b", "l", "l")])


def test_eliminate_sources_keeps_isolated_vertices():
    g = G(["a", "b", "i"], [("x", "a", "b")])
    assert eliminate_sources(g).vertices == ("b", "i")


def test_is_acyclic(toeplitz):
    assert is_acyclic(CHAIN3)
    assert not is_acyclic(toeplitz)


graph_seeds = st.integers(min_value=0, max_value=10**6)


@settings(max_examples=150, deadline=None)
@given(graph_seeds)
def test_closure_properties(seed):
    rng = random.Random(seed)
    g = random_graph(rng, max_vertices=6, max_edges=10)
    hs = hereditary_subsets(g)
    snk = sinks(g)
    for h in hs:
        c = saturated_closure(g, h)
        assert c == brute_force_closure(g, h)
        assert h <= c and is_hereditary(g, c) and is_saturated(g, c)
        assert saturated_closure(g, c) == c
        assert not ((c - h) & snk)
        for h2 in hs:
            if h <= h2:
                assert c <= saturated_closure(g, h2)


@settings(max_examples=150, deadline=None)
@given(graph_seeds)
def test_sink_bookkeeping(seed):
    rng = random.Random(seed)
    g = random_graph(rng, max_vertices=8, max_edges=12)
    snk = sinks(g)
    assert not sinks(quotient(g, saturated_closure(g, snk)))
    for h in rng.sample(hereditary_subsets(g), k=min(10, len(hereditary_subsets(g)))):
        c = saturated_closure(g, h)
        r, q = restriction(g, h), quotient(g, c)
        assert sinks(r) == h & snk
        assert sinks(q) == snk - c
        assert len(snk) == len(sinks(r)) + len(sinks(q))


@settings(max_examples=100, deadline=None)
@given(graph_seeds)
def test_eliminate_sources_terminates_cleanly(seed):
    g = random_graph(random.Random(seed), max_vertices=8, max_edges=10)
    out = eliminate_sources(g)
    rounds = sum(1 for op, _ in out.provenance if op == "eliminate_sources")
    assert rounds <= len(g.vertices)
    assert not (sources(out) - sinks(out))
    core = sink_source_free_core(g)
    assert not sources(core) and not sinks(core)
