import random

import pytest

from lpakit.algebra import acyclic_basis
from lpakit.corpus import acyclic_corpus, hereditary_subsets
from lpakit.errors import ConditionViolated, NotAcyclic
from lpakit.fields import GF, QQ, count_irreducibles
from lpakit.graph import sinks
from lpakit.simples import matrix_decomposition, simple_census
from lpakit.structure import kuhn_count_check

from conftest import G, brute_path_pairs

CHAIN3 = G(["v1", "v2", "v3"], [("a", "v1", "v2"), ("b", "v2", "v3")])
FORK = G(["v", "w1", "w2"], [("f1", "v", "w1"), ("f2", "v", "w2")])


def test_matrix_decomposition_examples():
    d = matrix_decomposition(CHAIN3, cross_check=True)
    assert d.blocks == [("v3", 3)] and d.total_dimension == 9
    d = matrix_decomposition(FORK, cross_check=True)
    assert d.blocks == [("w1", 2), ("w2", 2)] and d.total_dimension == 8
    assert matrix_decomposition(G(["v"])).blocks == [("v", 1)]
    with pytest.raises(NotAcyclic):
        matrix_decomposition(G(["u"], [("e", "u", "u")]))


def test_census_examples(toeplitz, double_loop):
    c = simple_census(toeplitz, GF(2), 3)
    assert c.count == 5
    assert c.sink_labels == ["w"]
    assert [f for _, f in c.cycle_labels] == c.polynomials and len(c.polynomials) == 4
    assert simple_census(double_loop, GF(2), 1).count == 2
    for k in (GF(2), GF(7), QQ):
        assert simple_census(CHAIN3, k).count == 1


def test_census_over_rationals_is_symbolic(toeplitz):
    c = simple_census(toeplitz, QQ)
    assert c.symbolic and c.count is None
    assert "every irreducible polynomial" in c.description()


def test_census_requires_condition():
    with pytest.raises(ConditionViolated):
        simple_census(G(["v"], [("e", "v", "v"), ("f", "v", "v")]), GF(2))


def test_census_grows_by_necklace_counts(double_loop):
    counts = [simple_census(double_loop, GF(3), d).count for d in range(1, 5)]
    for d in range(2, 5):
        assert counts[d - 1] - counts[d - 2] == 2 * count_irreducibles(GF(3), d)
    assert counts[0] == 2 * (count_irreducibles(GF(3), 1) - 1)


def test_acyclic_consistency_on_corpus():
    for g in acyclic_corpus(seed=7, count=60):
        d = matrix_decomposition(g)
        assert len(d.blocks) == len(sinks(g)) == simple_census(g, GF(2)).count
        assert d.total_dimension == len(acyclic_basis(g)) == brute_path_pairs(g)
        for h in hereditary_subsets(g):
            if h:
                assert kuhn_count_check(g, h).passed
