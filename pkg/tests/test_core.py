from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psl2sub.core import (
    CombinatorialType,
    Graph,
    GraphError,
    IsomorphismType,
    combinatorial_type,
    delta1,
    delta2,
    delta3,
    delta4,
    from_dict,
    from_json,
    graphs_equal,
    is_connected,
    is_cyclically_reduced,
    is_normalized,
    is_reduced,
    isomorphism_type,
    normalize,
    to_dict,
    to_dot,
    to_json,
)
from psl2sub.oracle import enumerate_cyclically_reduced, enumerate_reduced

from conftest import fig_h, fig_k, fig_l


def test_types_of_named_graphs():
    assert combinatorial_type(delta1()) == (1, 0, 0, 1, 1)
    assert combinatorial_type(delta2()) == (2, 1, 1, 0, 0)
    assert combinatorial_type(delta3()) == (2, 0, 1, 2, 0)
    assert combinatorial_type(delta4()) == (2, 1, 0, 0, 2)
    assert combinatorial_type(fig_h()) == (6, 3, 0, 0, 0)
    assert combinatorial_type(fig_l()) == (18, 8, 1, 2, 1)


def test_cyclically_reduced():
    assert is_cyclically_reduced(delta4())
    assert not is_cyclically_reduced(Graph(2, a_edges=[(1, 2)], b_loops=[2], root=1))
    assert is_cyclically_reduced(fig_l())
    assert is_cyclically_reduced(fig_k())


def test_reduced():
    assert is_reduced(delta1().with_root(1))
    assert is_reduced(Graph(2, a_edges=[(1, 2)], b_loops=[2], root=1))
    assert not is_reduced(Graph(2, a_edges=[(1, 2)], b_loops=[2], root=2))
    with pytest.raises(GraphError):
        is_reduced(delta2())


def test_connected():
    assert is_connected(delta2())
    two = Graph(4, a_edges=[(1, 2), (3, 4)], b_edges=[(1, 2), (3, 4)])
    assert not is_connected(two)
    assert is_connected(fig_l())


def test_isomorphism_type():
    assert isomorphism_type(delta1().with_root(1)) == (1, 1, 0)
    assert isomorphism_type(fig_h()) == (0, 0, 2)
    assert isomorphism_type(Graph(2, a_edges=[(1, 2)], b_loops=[2], root=1)) == (0, 1, 0)
    # size one: trivial, <a>, <b>
    assert isomorphism_type(Graph(1, root=1)) == (0, 0, 0)
    assert isomorphism_type(Graph(1, a_loops=[1], root=1)) == (1, 0, 0)
    assert isomorphism_type(Graph(1, b_loops=[1], root=1)) == (0, 1, 0)
    # root lacking its a-edge: <b, aba> style graph
    g = Graph(2, a_loops=[2], b_edges=[(1, 2)], root=1)
    assert is_reduced(g)
    assert isomorphism_type(g).r >= 0


def test_isomorphism_type_integral_on_oracle():
    for n in range(1, 6):
        for g in enumerate_cyclically_reduced(n):
            isomorphism_type(g)
        for g in enumerate_reduced(n):
            isomorphism_type(g)


def test_normalize():
    g = Graph([3, 7], a_loops=[3, 7], b_edges=[(3, 7)])
    assert normalize(g) == delta3()
    assert normalize(delta2()) is delta2() or normalize(delta2()) == delta2()
    assert normalize(Graph([2], a_loops=[2], b_loops=[2])) == delta1()
    assert not is_normalized(g)


def test_graphs_equal():
    assert graphs_equal(fig_h(), fig_h())
    assert not graphs_equal(delta3(), delta3(2, 1))


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(labels=2, a_loops=[1], a_edges=[(1, 2)]),
        dict(labels=2, a_edges=[(1, 1)]),
        dict(labels=3, b_edges=[(1, 2), (2, 3)]),
        dict(labels=2, b_edges=[(1, 2), (2, 1)]),
        dict(labels=2, b_loops=[1], b_edges=[(1, 2)]),
        dict(labels=3, b_edges=[(1, 2), (1, 3)]),
        dict(labels=2, root=5),
        dict(labels=[1, 1]),
        dict(labels=[0]),
    ],
)
def test_invalid_graphs_rejected(kwargs):
    with pytest.raises(GraphError):
        Graph(**kwargs)


def test_json_format_exact():
    text = to_json(Graph(2, a_edges=[(2, 1)], b_loops=[2], root=1))
    assert json.loads(text) == {"n": 2, "root": 1, "a_loops": [], "b_loops": [2], "a_edges": [[1, 2]], "b_edges": []}


@pytest.mark.parametrize(
    "obj",
    [
        {"n": 2, "a_loops": [1, 1], "b_loops": [], "a_edges": [], "b_edges": [[1, 2]]},
        {"n": 2, "a_loops": [], "b_loops": [], "a_edges": [[1, 2], [1, 2]], "b_edges": [[1, 2]]},
        {"n": 2, "a_loops": [], "b_loops": [], "a_edges": [[1, 2]], "b_edges": [[1, 2]], "colour": 1},
        {"n": 2, "a_loops": [], "b_loops": [], "a_edges": [[1, 3]], "b_edges": []},
    ],
)
def test_loader_rejects(obj):
    with pytest.raises(GraphError):
        from_dict(obj)


def test_dot_export():
    dot = to_dot(fig_h())
    assert "doublecircle" in dot
    assert "dashed" in dot


def test_round_trip_on_oracle():
    for n in range(1, 5):
        for g in enumerate_cyclically_reduced(n):
            assert from_json(to_json(g)) == g
        for g in enumerate_reduced(n):
            assert from_dict(to_dict(g)) == g


def test_rooted_labelings_are_distinct():
    # a rooted reduced graph has exactly n! labelings
    for g in [fig_h(), fig_k(), Graph(3, a_loops=[3], a_edges=[(1, 2)], b_loops=[1], b_edges=[(2, 3)], root=1)]:
        n = g.size
        seen = {g.relabel(dict(zip(range(1, n + 1), p))) for p in itertools.permutations(range(1, n + 1))}
        assert len(seen) == len(list(itertools.permutations(range(n))))


def test_delta4_has_one_labeling():
    assert delta4().relabel({1: 2, 2: 1}) == delta4()


def test_type_validity():
    for n in range(1, 7):
        for g in enumerate_cyclically_reduced(n):
            assert combinatorial_type(g).is_valid_cyclic()
    assert CombinatorialType(3, 1, 0, 1, 0).phi() == 0
    assert str(IsomorphismType(0, 0, 2)) == "(0,0,2)"


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.data())
def test_relabel_preserves_type(n, data):
    graphs = list(enumerate_cyclically_reduced(min(n, 4)))
    g = data.draw(st.sampled_from(graphs))
    perm = data.draw(st.permutations(range(1, g.size + 1)))
    h = g.relabel(dict(zip(range(1, g.size + 1), perm)))
    assert combinatorial_type(h) == combinatorial_type(g)
    assert from_json(to_json(h)) == h
