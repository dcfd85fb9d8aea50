from __future__ import annotations

import pytest

from psl2sub.core import Graph, delta1, is_reduced
from psl2sub.oracle import (
    a_structures,
    b_structure_count,
    chi_square_uniform,
    count_by_type,
    count_reduced_by_type,
    enumerate_cyclically_reduced,
    enumerate_reduced,
    involution_count,
    silhouette_count_fixed_matching,
)


def test_structure_counts():
    assert [involution_count(n) for n in range(1, 9)] == [1, 2, 4, 10, 26, 76, 232, 764]
    assert [b_structure_count(n) for n in range(1, 9)] == [1, 3, 9, 33, 141, 651, 3333, 18369]


def test_skip_leaves_vertex_uncovered():
    assert all(m[1] == -1 for m in a_structures(4, skip=1))
    assert sum(1 for _ in a_structures(4, skip=1)) == 4


def test_small_enumerations():
    assert list(enumerate_cyclically_reduced(1)) == [delta1()]
    assert len(list(enumerate_cyclically_reduced(2))) == 5
    assert sum(1 for _ in enumerate_cyclically_reduced(6, (6, 3, 0, 0, 0))) == 600


def test_rooted_enumeration():
    one = list(enumerate_reduced(1))
    assert len(one) == 4
    assert Graph(1, root=1) in one
    two = list(enumerate_reduced(2))
    assert len(two) == 16
    assert all(is_reduced(g) for g in two)


def test_enumerations_are_duplicate_free():
    for n in range(1, 6):
        graphs = list(enumerate_cyclically_reduced(n))
        assert len(set(graphs)) == len(graphs)
        rooted = list(enumerate_reduced(n))
        assert len(set(rooted)) == len(rooted)


def test_count_by_type_matches_enumeration():
    assert count_by_type(0) == {}
    assert sum(count_by_type(5).values()) == sum(1 for _ in enumerate_cyclically_reduced(5))
    assert sum(count_reduced_by_type(4).values()) == 816


def test_fixed_matching_trick():
    assert silhouette_count_fixed_matching(6) == 600
    assert silhouette_count_fixed_matching(8) == 0


def test_size_bound():
    with pytest.raises(ValueError):
        list(enumerate_cyclically_reduced(9))


def test_chi_square():
    assert chi_square_uniform([10, 10, 10])[0] == 0
    assert chi_square_uniform([10**4, 0, 0, 0])[1] < 1e-9
    stat, p = chi_square_uniform({"x": 5}, universe=["x", "y"])
    assert stat == 5 and p < 0.05
    with pytest.raises(ValueError):
        chi_square_uniform({"z": 1}, universe=["x", "y"])
