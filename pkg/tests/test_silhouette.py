from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psl2sub.core import Graph, GraphError, combinatorial_type, delta1, delta2, delta3, delta4, isomorphism_type, normalize
from psl2sub.oracle import enumerate_cyclically_reduced
from psl2sub.sampler import RandomSource, random_cyclically_reduced_graph
from psl2sub.silhouette import is_silhouette_graph, silhouette

from conftest import fig_h, fig_k, fig_l


def phi(t):
    return t.n - 2 * t.k3 - 3 * t.l2 - 4 * t.l3


def test_predicate():
    assert is_silhouette_graph(delta1())
    assert is_silhouette_graph(delta2()) and is_silhouette_graph(delta2(2, 1))
    assert is_silhouette_graph(fig_h())
    assert not is_silhouette_graph(delta3())
    assert not is_silhouette_graph(delta4())


def test_figure_examples():
    assert silhouette(fig_h()) == fig_h().with_root(None)
    assert silhouette(fig_k()) == delta2()
    assert silhouette(fig_l()) == fig_h().with_root(None)


def test_small_cases():
    assert silhouette(delta3()) == delta1()
    assert silhouette(delta4()) == delta1()
    assert silhouette(delta2(2, 1)) == delta2()


def test_rejects_non_cyclically_reduced():
    with pytest.raises(GraphError):
        silhouette(Graph(2, a_edges=[(1, 2)], b_loops=[2]))
    with pytest.raises(GraphError):
        silhouette(Graph(4, a_edges=[(1, 2), (3, 4)], b_edges=[(1, 2), (3, 4)]))


def test_trace_preserves_phi():
    trace = []
    silhouette(fig_l(), trace=trace)
    assert trace
    g = fig_l().with_root(None)
    for m in trace:
        h = m.apply(g)
        assert phi(combinatorial_type(h)) == phi(combinatorial_type(g))
        g = h
    assert normalize(g) == fig_h().with_root(None)


def test_confluence_and_rank_small():
    rng = random.Random(7)
    for n in range(1, 6):
        for g in enumerate_cyclically_reduced(n):
            h = silhouette(g)
            assert h.size in (1, 2) or h.size % 6 == 0
            r = isomorphism_type(g).r
            assert (h == delta1()) == (r == 0)
            assert (h == delta2()) == (r == 1)
            for _ in range(3):
                assert silhouette(g, rng) == h


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([(8, 4, 2, 0, 1), (10, 5, 2, 0, 0), (9, 3, 1, 3, 1), (14, 6, 3, 2, 2)]))
def test_confluence_on_sampled_graphs(seed, tau):
    g = random_cyclically_reduced_graph(tau, RandomSource(seed))
    h = silhouette(g)
    assert is_silhouette_graph(h)
    assert silhouette(g, random.Random(seed)) == h
    if h.size > 2:
        assert isomorphism_type(h).r == isomorphism_type(g).r
