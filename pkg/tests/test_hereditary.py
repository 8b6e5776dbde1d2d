import random

import pytest
from hypothesis import given, settings

import oracles
from conftest import graphs
from gia.graph_core import EGraph, EnumerationLimitError, GraphError, INF
from gia.hereditary import (
    enumerate_saturated_hereditary,
    h_fin_inf,
    hereditary_saturated_closure,
    is_hereditary,
    is_saturated,
    saturate,
)


def test_is_hereditary(G):
    g = G["ex54"]
    assert is_hereditary(g, {"w"})
    assert not is_hereditary(g, {"v"})
    for h in G.values():
        assert is_hereditary(h, set())
        assert is_hereditary(h, h.vertices)


def test_is_saturated(G):
    g = G["chain"]
    assert is_saturated(g, {"v1", "v2", "v3"})
    assert not is_saturated(g, {"v2", "v3"})
    assert is_saturated(g, g.vertices)


def test_saturate_examples(G):
    assert saturate(G["chain"], {"v2", "v3"}) == {"v1", "v2", "v3"}
    assert saturate(G["ex54"], {"v", "w"}) == {"v", "w"}
    assert saturate(G["chain"], {"v1", "v2", "v3"}) == {"v1", "v2", "v3"}


def test_closure_examples(G):
    assert hereditary_saturated_closure(G["chain"], {"v1"}) == {"v1", "v2", "v3"}
    assert hereditary_saturated_closure(G["ex54"], {"v"}) == {"v", "w"}
    assert hereditary_saturated_closure(G["ex34"], {"t", "w", "h"}) == {"t", "w", "h"}


def test_closure_pulls_in_finite_emitters():
    # b's only edge goes to c, so closing {c} must take b and then a
    g = EGraph("abcd", {("a", "b"): 1, ("b", "c"): 1, ("d", "c"): INF, ("d", "a"): 1})
    assert hereditary_saturated_closure(g, {"c"}) == {"a", "b", "c"}


class TestHFinInf:
    def test_examples(self, G):
        assert h_fin_inf(G["ex34"], {"h"}) == {"v"}
        assert h_fin_inf(G["ex54"], {"w"}) == set()
        assert h_fin_inf(G["ex51k"], {"x1", "x2", "x3"}) == {"w"}

    def test_rejects_non_hereditary(self, G):
        with pytest.raises(GraphError, match="hereditary"):
            h_fin_inf(G["ex54"], {"v"})

    def test_rejects_unsaturated(self, G):
        with pytest.raises(GraphError, match="saturated"):
            h_fin_inf(G["chain"], {"v2", "v3"})

    @given(graphs(mults=(0, 1, 2)))
    def test_row_finite_graphs_have_none(self, g):
        for H in enumerate_saturated_hereditary(g):
            assert h_fin_inf(g, H) == set()

    @given(graphs())
    def test_matches_oracle(self, g):
        for H in oracles.sat_her_sets(g):
            assert h_fin_inf(g, H) == oracles.hfi(g, H)


class TestEnumeration:
    def test_examples(self, G):
        assert enumerate_saturated_hereditary(G["ex54"]) == [
            set(), {"w"}, {"v", "w"}, {"u", "v", "w"}
        ]
        assert enumerate_saturated_hereditary(G["ex34"]) == [
            set(), {"h"}, {"t", "w", "h"}, {"v", "u", "h"}, {"t", "w", "v", "u", "h"}
        ]
        assert enumerate_saturated_hereditary(G["single"]) == [set(), {"v"}]

    def test_limit(self, G):
        with pytest.raises(EnumerationLimitError):
            enumerate_saturated_hereditary(G["ex34"], limit=4)

    @settings(max_examples=200)
    @given(graphs(max_n=6))
    def test_matches_subset_filter(self, g):
        assert set(enumerate_saturated_hereditary(g)) == set(oracles.sat_her_sets(g))

    def test_matches_subset_filter_on_twelve_vertices(self):
        rng = random.Random(12)
        for _ in range(3):
            g = oracles.random_graph(rng, 12, weights=(0.85, 0.08, 0.02, 0.05))
            assert set(enumerate_saturated_hereditary(g)) == set(oracles.sat_her_sets(g))


class TestClosureProperties:
    @given(graphs())
    def test_saturate_extensive_idempotent_monotone(self, g):
        subsets = list(oracles.all_subsets(g))
        for X in subsets:
            S = saturate(g, X)
            assert X <= S
            assert saturate(g, S) == S
            assert is_saturated(g, S)
        for X in subsets[::3]:
            for Y in subsets[::5]:
                if X <= Y:
                    assert saturate(g, X) <= saturate(g, Y)

    @given(graphs())
    def test_closure_extensive_idempotent_monotone(self, g):
        subsets = list(oracles.all_subsets(g))
        for X in subsets:
            C = hereditary_saturated_closure(g, X)
            assert X <= C
            assert hereditary_saturated_closure(g, C) == C
            assert is_hereditary(g, C) and is_saturated(g, C)
        for X in subsets[::3]:
            for Y in subsets[::5]:
                if X <= Y:
                    assert hereditary_saturated_closure(g, X) <= hereditary_saturated_closure(g, Y)

    @given(graphs())
    def test_saturation_of_hereditary_is_hereditary(self, g):
        for X in oracles.all_subsets(g):
            if is_hereditary(g, X):
                assert is_hereditary(g, saturate(g, X))

    @given(graphs())
    def test_added_vertices_are_finite_emitters_reaching_x(self, g):
        r = oracles.reach_matrix(g)
        for X in oracles.all_subsets(g):
            S = saturate(g, X)
            for v in S - X:
                assert 0 < oracles.outdeg(g, v) < INF
            for v in S:
                assert any(r[v, x] for x in X)

    @given(graphs())
    def test_closure_is_least_saturated_hereditary_superset(self, g):
        closed = oracles.sat_her_sets(g)
        for X in oracles.all_subsets(g):
            above = [H for H in closed if X <= H]
            assert hereditary_saturated_closure(g, X) == frozenset.intersection(*above)
