from __future__ import annotations

import pytest

from psl2sub.core import Graph
from psl2sub.counting import CountTable


def fig_h(root=1) -> Graph:
    """Two b-triangles joined by three a-edges; the subgroup <abaB, babab>."""
    return Graph(
        6,
        a_edges=[(1, 4), (2, 5), (3, 6)],
        b_edges=[(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)],
        root=root,
    )


def fig_k(root=1) -> Graph:
    return Graph(
        6,
        a_edges=[(1, 4), (5, 3), (2, 6)],
        b_loops=[6],
        b_edges=[(1, 2), (2, 3), (3, 1), (4, 5)],
        root=root,
    )


def fig_l(root=1) -> Graph:
    return Graph(
        18,
        a_loops=[7, 18],
        a_edges=[(1, 2), (3, 15), (16, 17), (12, 14), (11, 4), (6, 5), (8, 9), (10, 13)],
        b_loops=[9],
        b_edges=[
            (2, 3), (3, 10), (10, 2),
            (14, 17), (17, 18), (18, 14),
            (11, 12), (12, 13), (13, 11),
            (1, 4), (4, 5), (5, 1),
            (6, 8), (8, 7), (7, 6),
            (15, 16),
        ],
        root=root,
    )


@pytest.fixture(scope="session")
def table() -> CountTable:
    return CountTable().precompute(12)
