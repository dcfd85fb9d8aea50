"""Brute-force enumeration of small labeled graphs, plus a chi-square uniformity check.

Nothing here uses the counting recurrences or the moves; the enumerations
work on raw arrays (index ``i`` is vertex ``i + 1``, ``-1`` means absent).
"""
from __future__ import annotations

import math
from collections import Counter
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from scipy.stats import chi2

from .core import CombinatorialType, Graph

MAX_ENUMERATION_SIZE = 8
MAX_SILHOUETTE_SIZE = 12


def _check_size(n: int, limit: int = MAX_ENUMERATION_SIZE) -> None:
    if not 1 <= n <= limit:
        raise ValueError(f"enumeration size must lie in 1..{limit}, got {n}")


def a_structures(n: int, skip: int = -1) -> Iterator[list[int]]:
    """Every involution on ``0..n-1`` (fixed points are a-loops), leaving ``skip`` uncovered.

    Yields ``mate`` arrays; ``mate[skip] == -1``. Order: lexicographic in the
    choice of partner for the smallest free point, loop first.
    """
    mate = [-1] * n

    def rec(i):
        while i < n and (mate[i] != -1 or i == skip):
            i += 1
        if i == n:
            yield list(mate)
            return
        mate[i] = i
        yield from rec(i + 1)
        for j in range(i + 1, n):
            if mate[j] == -1 and j != skip:
                mate[i], mate[j] = j, i
                yield from rec(i + 1)
                mate[j] = -1
        mate[i] = -1

    yield from rec(0)


def b_structures(n: int, skip: int = -1, only_triangles: bool = False) -> Iterator[tuple[list[int], list[int]]]:
    """Every partition of ``0..n-1`` minus ``skip`` into b-loops, directed arcs and directed triangles.

    Yields ``(nxt, prv)`` arrays; a loop has ``nxt[i] == i``.
    """
    nxt = [-1] * n
    prv = [-1] * n
    used = [False] * n
    if skip >= 0:
        used[skip] = True

    def rec(i):
        while i < n and used[i]:
            i += 1
        if i == n:
            yield list(nxt), list(prv)
            return
        used[i] = True
        if not only_triangles:
            nxt[i] = prv[i] = i
            yield from rec(i + 1)
            nxt[i] = prv[i] = -1
        free = [j for j in range(i + 1, n) if not used[j]]
        if not only_triangles:
            for j in free:
                used[j] = True
                for u, v in ((i, j), (j, i)):
                    nxt[u], prv[v] = v, u
                    yield from rec(i + 1)
                    nxt[u] = prv[v] = -1
                used[j] = False
        for x, j in enumerate(free):
            for k in free[x + 1 :]:
                used[j] = used[k] = True
                for p, q in ((j, k), (k, j)):
                    nxt[i], nxt[p], nxt[q] = p, q, i
                    prv[p], prv[q], prv[i] = i, p, q
                    yield from rec(i + 1)
                nxt[i] = nxt[j] = nxt[k] = prv[i] = prv[j] = prv[k] = -1
                used[j] = used[k] = False
        used[i] = False

    yield from rec(0)


def _connected(n: int, mate: Sequence[int], nxt: Sequence[int]) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parts = n
    for arr in (mate, nxt):
        for u in range(n):
            v = arr[u]
            if v > u or (v >= 0 and v != u and arr is nxt):
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
                    parts -= 1
    return parts == 1


def _a_summary(mate: Sequence[int]) -> tuple[int, int]:
    loops = sum(1 for i, m in enumerate(mate) if m == i)
    pairs = sum(1 for i, m in enumerate(mate) if m > i)
    return pairs, loops


def _b_summary(nxt: Sequence[int]) -> tuple[int, int]:
    loops = sum(1 for i, v in enumerate(nxt) if v == i)
    arcs = sum(1 for i, v in enumerate(nxt) if v >= 0 and v != i and nxt[v] == -1)
    return arcs, loops


def _graph(n: int, mate, nxt, root: Optional[int] = None) -> Graph:
    return Graph(
        n,
        a_loops=[i + 1 for i in range(n) if mate[i] == i],
        a_edges=[(i + 1, m + 1) for i, m in enumerate(mate) if m > i],
        b_loops=[i + 1 for i in range(n) if nxt[i] == i],
        b_edges=[(i + 1, v + 1) for i, v in enumerate(nxt) if v >= 0 and v != i],
        root=root,
    )


def _pairs(n: int, skip_a: int = -1, skip_b: int = -1):
    a_list = [(m, _a_summary(m)) for m in a_structures(n, skip_a)]
    b_list = [(nx, _b_summary(nx)) for nx, _ in b_structures(n, skip_b)]
    for mate, (k2, l2) in a_list:
        for nxt, (k3, l3) in b_list:
            if _connected(n, mate, nxt):
                yield mate, nxt, CombinatorialType(n, k2, k3, l2, l3)


def enumerate_cyclically_reduced(n: int, tau=None) -> Iterator[Graph]:
    """All labeled connected cyclically reduced graphs of size ``n`` (of type ``tau`` if given)."""
    _check_size(n)
    want = None if tau is None else tuple(tau)
    for mate, nxt, t in _pairs(n):
        if want is None or t == want:
            yield _graph(n, mate, nxt)


def count_by_type(n: int) -> dict:
    """Histogram of ``enumerate_cyclically_reduced(n)`` by combinatorial type, without building graphs."""
    if n < 1:
        return {}
    _check_size(n)
    return dict(Counter(t for _, _, t in _pairs(n)))


def _rooted(n: int):
    """(mate, nxt, root) for every labeled rooted reduced graph of size ``n``; root is 0-based."""
    for r in range(n):
        # an isolated root (both skipped) only survives the connectivity filter when n == 1
        for skip_a, skip_b in ((-1, -1), (r, -1), (-1, r), (r, r)):
            for mate, nxt, _ in _pairs(n, skip_a, skip_b):
                yield mate, nxt, r


def _rooted_type(n: int, mate, nxt) -> CombinatorialType:
    k2, l2 = _a_summary(mate)
    k3, l3 = _b_summary(nxt)
    return CombinatorialType(n, k2, k3, l2, l3)


def enumerate_reduced(n: int) -> Iterator[Graph]:
    """All labeled rooted reduced graphs of size ``n``: every vertex but the root meets both structures."""
    _check_size(n)
    for mate, nxt, r in _rooted(n):
        yield _graph(n, mate, nxt, root=r + 1)


def count_reduced_by_type(n: int) -> dict:
    _check_size(n)
    return dict(Counter(_rooted_type(n, mate, nxt) for mate, nxt, _ in _rooted(n)))


def involution_count(n: int) -> int:
    return sum(1 for _ in a_structures(n))


def b_structure_count(n: int) -> int:
    return sum(1 for _ in b_structures(n))


def silhouette_count_fixed_matching(n: int) -> int:
    """Connected silhouette graphs of size ``n``, counted against one a-matching.

    Relabeling acts transitively on perfect matchings and preserves
    connectivity, so the total is (connected triangle structures for the
    matching ``{1,2},{3,4},...``) times the number of perfect matchings.
    """
    _check_size(n, MAX_SILHOUETTE_SIZE)
    if n % 6:
        return 0
    mate = [i + 1 if i % 2 == 0 else i - 1 for i in range(n)]
    hits = sum(1 for nxt, _ in b_structures(n, only_triangles=True) if _connected(n, mate, nxt))
    return hits * math.prod(range(1, n, 2))


def chi_square_uniform(counts: Union[Mapping, Sequence[int]], universe: Optional[Iterable] = None) -> tuple[float, float]:
    """Pearson statistic and p-value of ``counts`` against the uniform law.

    ``counts`` is a histogram (mapping or sequence). With ``universe`` given,
    bins missing from ``counts`` count as zero and keys outside it are an error.
    """
    if isinstance(counts, Mapping):
        if universe is not None:
            bins = list(universe)
            known = set(bins)
            stray = [k for k in counts if k not in known]
            if stray:
                raise ValueError(f"{len(stray)} observed values are outside the universe, e.g. {stray[0]!r}")
            obs = [counts.get(b, 0) for b in bins]
        else:
            obs = list(counts.values())
    else:
        obs = list(counts)
    k = len(obs)
    total = sum(obs)
    if k < 2 or total == 0:
        return 0.0, 1.0
    expected = total / k
    stat = sum((o - expected) ** 2 for o in obs) / expected
    return stat, float(chi2.sf(stat, k - 1))
