"""Exhaustive rewriting of a cyclically reduced graph to its silhouette."""
from __future__ import annotations

import heapq
import random
from typing import Optional

from .core import (
    Graph,
    GraphError,
    combinatorial_type,
    is_connected,
    is_cyclically_reduced,
    normalize,
)
from .moves import (
    Lambda22,
    _exceptional,
    _kappa3_at,
    _lambda2_at,
    _lambda3_at,
    _run,
    draft_moves,
)


def is_silhouette_graph(g: Graph) -> bool:
    n = g.size
    if n == 1:
        (v,) = g.labels
        return v in g.a_loops and v in g.b_loops
    if n == 2:
        return len(g.a_edges) == 1 and len(g.b_next) == 1 and not g.a_loops and not g.b_loops
    t = combinatorial_type(g)
    return n % 6 == 0 and tuple(t) == (n, n // 2, 0, 0, 0)


def _check_input(g: Graph) -> None:
    if not is_cyclically_reduced(g):
        raise GraphError("silhouette needs a cyclically reduced graph")
    if not is_connected(g):
        raise GraphError("silhouette needs a connected graph")


def silhouette(g: Graph, rng: Optional[random.Random] = None, trace: Optional[list] = None) -> Graph:
    """Apply moves until none is left, then normalize.

    Without ``rng`` the order is fixed: all lambda3 moves, then lambda2 moves,
    then kappa3 moves, then the exceptional move, smallest label first in each
    phase. With ``rng`` every step picks uniformly among all applicable moves;
    the result does not depend on the choice. Applied moves are appended to
    ``trace`` when given.
    """
    _check_input(g)
    d = g.thaw()
    d.root = None

    def run(m):
        _run(d, m)
        if trace is not None:
            trace.append(m)

    if rng is not None:
        while True:
            moves = draft_moves(d)
            if not moves:
                break
            run(moves[rng.randrange(len(moves))])
        return normalize(d.freeze())

    for v in sorted(d.b_loops):
        if v in d.labels:
            m = _lambda3_at(d, v)
            if m is not None:
                run(m)

    heap = sorted(d.a_loops)
    while heap:
        v = heapq.heappop(heap)
        if v not in d.labels:
            continue
        m = _lambda2_at(d, v)
        if m is None:
            continue
        run(m)
        if isinstance(m, Lambda22):
            heapq.heappush(heap, m.w_prime)

    for v in sorted(d.b_next):
        if v in d.labels:
            m = _kappa3_at(d, v)
            if m is not None:
                run(m)

    m = _exceptional(d)
    if m is not None:
        run(m)
    out = d.freeze()
    if draft_moves(d):
        raise AssertionError(f"moves left after rewriting {out!r}")
    return normalize(out)
