"""Uniform random generation of labeled cyclically reduced and rooted reduced graphs.

Every sampler draws from a ``RandomSource`` so that a seed fixes the output.
"""
from __future__ import annotations

import random
from typing import NamedTuple, Optional

from .core import (
    CombinatorialType,
    Graph,
    GraphError,
    IsomorphismType,
    delta1,
    delta2,
    delta3,
    delta4,
)
from .counting import CountTable, default_table
from .moves import (
    KAPPA3,
    LAMBDA21,
    LAMBDA22,
    LAMBDA3,
    expand_kappa3,
    expand_lambda21,
    expand_lambda22,
    expand_lambda3,
)


class EmptyTypeError(ValueError):
    """No graph of the requested type exists."""


class RandomSource:
    """Seeded stream of random bits and integers.

    ``bits_consumed`` counts every bit handed out, whether through
    ``next_bit`` or inside the integer helpers.
    """

    def __init__(self, seed=None):
        self._rng = random.Random(seed)
        self._buf = 0
        self._left = 0
        self.bits_consumed = 0

    def next_bit(self) -> int:
        if not self._left:
            self._buf = self._rng.getrandbits(64)
            self._left = 64
        self._left -= 1
        self.bits_consumed += 1
        bit = self._buf & 1
        self._buf >>= 1
        return bit

    def getrandbits(self, k: int) -> int:
        self.bits_consumed += k
        return self._rng.getrandbits(k)

    def uniform_big(self, N: int) -> int:
        """Uniform in ``0..N-1``: draw ``bit_length(N-1)`` bits until the value is below ``N``."""
        if N < 1:
            raise ValueError(f"uniform_big needs N >= 1, got {N}")
        k = (N - 1).bit_length()
        if k == 0:
            return 0
        while True:
            x = self.getrandbits(k)
            if x < N:
                return x

    def uniform_int(self, n: int) -> int:
        """Uniform in ``1..n``."""
        return 1 + self.uniform_big(n)

    def randrange(self, n: int) -> int:
        return self.uniform_big(n)

    def permutation(self, n: int) -> list[int]:
        """Fisher-Yates shuffle of ``1..n``."""
        p = list(range(1, n + 1))
        for i in range(n - 1, 0, -1):
            j = self.uniform_big(i + 1)
            p[i], p[j] = p[j], p[i]
        return p

    def pair(self, n: int) -> tuple[int, int]:
        """Uniform ordered pair of distinct elements of ``1..n``."""
        v = self.uniform_int(n)
        w = self.uniform_int(n - 1)
        return v, (w + 1 if w >= v else w)

    def sign(self) -> int:
        return 1 if self.next_bit() else -1


def _source(rng) -> RandomSource:
    if isinstance(rng, RandomSource):
        return rng
    return RandomSource(rng)


# -- Bernoulli by bit streaming -----------------------------------------


class Bernoulli:
    """Coin of bias ``s/total`` resolved by comparing a random bit stream with both numbers.

    The binary expansions are stored once as big-endian bytes, so reading a
    bit costs O(1). ``attempts`` counts calls to ``attempt``.
    """

    __slots__ = ("s", "total", "nbits", "_pad", "_z", "_sb", "attempts")

    def __init__(self, s: int, total: int):
        if total < 1:
            raise ValueError("total must be positive")
        if not 0 <= s <= total:
            raise ValueError(f"need 0 <= s <= total, got s={s}, total={total}")
        self.s, self.total = s, total
        self.nbits = total.bit_length()
        nbytes = (self.nbits + 7) // 8
        self._pad = 8 * nbytes - self.nbits
        self._z = total.to_bytes(nbytes, "big")
        self._sb = s.to_bytes(nbytes, "big")
        self.attempts = 0

    def attempt(self, rng: RandomSource) -> Optional[bool]:
        """One pass over a fresh ``nbits``-bit number x: ``x < s``, or None when ``x >= total``."""
        self.attempts += 1
        z, sb, pad = self._z, self._sb, self._pad
        next_bit = rng.next_bit
        below_total = False
        vs_s = None
        for i in range(pad, pad + self.nbits):
            byte, shift = i >> 3, 7 - (i & 7)
            bit = next_bit()
            if not below_total:
                zb = (z[byte] >> shift) & 1
                if bit > zb:
                    return None
                if bit < zb:
                    below_total = True
            if vs_s is None:
                sbit = (sb[byte] >> shift) & 1
                if bit != sbit:
                    vs_s = bit < sbit
            if below_total and vs_s is not None:
                return vs_s
        if not below_total:
            return None  # x == total
        return False  # x == s

    def draw(self, rng: RandomSource) -> bool:
        while True:
            out = self.attempt(rng)
            if out is not None:
                return out


def bernoulli(s: int, total: int, rng) -> bool:
    """True with probability exactly ``s/total``."""
    return Bernoulli(s, total).draw(_source(rng))


# -- silhouette graphs (rejection) --------------------------------------


class SilhouetteAttempt(NamedTuple):
    a_mate: dict
    b_next: dict
    connected: bool


def _connected(n: int, a_mate: dict, b_next: dict) -> bool:
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parts = n
    for edges in (a_mate, b_next):
        for u, v in edges.items():
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                parts -= 1
    return parts == 1


def silhouette_attempt(n: int, rng) -> SilhouetteAttempt:
    """One draw of conjugated involution and triangle permutation, plus the connectivity verdict."""
    if n < 6 or n % 6:
        raise ValueError(f"silhouette size must be a positive multiple of 6, got {n}")
    rng = _source(rng)
    t = rng.permutation(n)
    a_mate = {}
    for i in range(0, n, 2):
        u, v = t[i], t[i + 1]
        a_mate[u] = v
        a_mate[v] = u
    t = rng.permutation(n)
    b_next = {}
    for i in range(0, n, 3):
        x, y, z = t[i], t[i + 1], t[i + 2]
        b_next[x] = y
        b_next[y] = z
        b_next[z] = x
    return SilhouetteAttempt(a_mate, b_next, _connected(n, a_mate, b_next))


def random_silhouette_graph(n: int, rng, stats: Optional[dict] = None) -> Graph:
    """Uniform labeled silhouette graph of size ``n``; ``stats["attempts"]`` counts the draws."""
    rng = _source(rng)
    tries = 0
    while True:
        tries += 1
        a = silhouette_attempt(n, rng)
        if a.connected:
            break
    if stats is not None:
        stats["attempts"] = stats.get("attempts", 0) + tries
    return Graph._trusted(range(1, n + 1), (), a.a_mate, (), a.b_next)


# -- cyclically reduced graphs by type ----------------------------------


def _add(t: tuple, d: tuple) -> CombinatorialType:
    return CombinatorialType(*(x + y for x, y in zip(t, d)))


def _branch_coin(table: CountTable, t: tuple) -> Bernoulli:
    coin = table._branch.get(t)
    if coin is None:
        n, k2, k3, l2, l3 = t
        coin = Bernoulli(n * (k3 + 1) * table.s(_add(t, LAMBDA21)), l2 * table.s(t))
        table._branch[t] = coin
    return coin


def _plan(tau: CombinatorialType, rng: RandomSource, table: CountTable, branch: str) -> tuple:
    """Walk the recursion top-down, choosing each lambda2 branch; return (base type, steps)."""
    steps = []
    t = tau
    while t.n > 2:
        n, k2, k3, l2, l3 = t
        if l3 > 0:
            steps.append(("l3", t))
            t = _add(t, LAMBDA3)
        elif l2 > 0:
            if branch == "bernoulli":
                first = _branch_coin(table, t).draw(rng)
            elif branch == "integer":
                first = rng.uniform_big(l2 * table.s(t)) < n * (k3 + 1) * table.s(_add(t, LAMBDA21))
            else:
                raise ValueError(f"unknown branch method {branch!r}")
            if first:
                steps.append(("l21", t))
                t = _add(t, LAMBDA21)
            else:
                steps.append(("l22", t))
                t = _add(t, LAMBDA22)
        elif k3 > 0:
            steps.append(("k3", t))
            t = _add(t, KAPPA3)
        else:
            break
    return t, steps


def _base_graph(t: CombinatorialType, rng: RandomSource) -> Graph:
    key = tuple(t)
    if key == (1, 0, 0, 1, 1):
        return delta1()
    if key == (2, 1, 1, 0, 0):
        return delta2() if rng.next_bit() else delta2(2, 1)
    if key == (2, 0, 1, 2, 0):
        return delta3() if rng.next_bit() else delta3(2, 1)
    if key == (2, 1, 0, 0, 2):
        return delta4()
    return random_silhouette_graph(t.n, rng)


class _Pool:
    """Set with O(1) uniform choice."""

    __slots__ = ("items", "pos")

    def __init__(self, items=()):
        self.items = list(items)
        self.pos = {x: i for i, x in enumerate(self.items)}

    def add(self, x) -> None:
        self.pos[x] = len(self.items)
        self.items.append(x)

    def remove(self, x) -> None:
        i = self.pos.pop(x)
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.pos[last] = i

    def pick(self, rng: RandomSource):
        x = self.items[rng.uniform_big(len(self.items))]
        self.remove(x)
        return x


def _build_fast(base: Graph, steps: list, rng: RandomSource) -> Graph:
    """Apply the expansions with fresh vertices ``n`` (and ``n-1``), then relabel once."""
    d = base.thaw()
    a_loops = _Pool(sorted(d.a_loops))
    a_edges = _Pool(sorted((u, v) for u, v in d.a_mate.items() if u < v))
    arcs = _Pool(sorted(u for u, v in d.b_next.items() if v not in d.b_next))
    for kind, t in reversed(steps):
        n = t.n
        if kind == "l3":
            w = a_loops.pick(rng)
            d.a_loops.discard(w)
            d.labels.add(n)
            d.b_loops.add(n)
            d.add_a_edge(n, w)
            a_edges.add((w, n))
        elif kind == "l21":
            x = arcs.pick(rng)
            y = d.b_next[x]
            d.labels.add(n)
            d.a_loops.add(n)
            a_loops.add(n)
            d.add_b_arc(y, n)
            d.add_b_arc(n, x)
        elif kind == "l22":
            wp = a_loops.pick(rng)
            d.a_loops.discard(wp)
            v, w = n, n - 1
            d.labels.update((v, w))
            d.a_loops.add(v)
            a_loops.add(v)
            if rng.next_bit():
                d.add_b_arc(v, w)
                arcs.add(v)
            else:
                d.add_b_arc(w, v)
                arcs.add(w)
            d.add_a_edge(w, wp)
            a_edges.add((wp, w))
        else:
            x, y = a_edges.pick(rng)
            if rng.next_bit():
                x, y = y, x
            v, w = n, n - 1
            del d.a_mate[x], d.a_mate[y]
            d.labels.update((v, w))
            d.add_b_arc(v, w)
            arcs.add(v)
            d.add_a_edge(v, x)
            d.add_a_edge(w, y)
            a_edges.add((x, v))
            a_edges.add((y, w))
    return random_relabel(d.freeze(), rng)


def _build_faithful(base: Graph, steps: list, rng: RandomSource) -> Graph:
    """Apply the expansions with every parameter drawn uniformly, as in the bijective proofs."""
    g = base
    for kind, t in reversed(steps):
        n = t.n
        if kind == "l3":
            loops = sorted(g.a_loops)
            g = expand_lambda3(g, loops[rng.uniform_big(len(loops))], rng.uniform_int(n))
        elif kind == "l21":
            arcs = sorted(g.isolated_b_edges())
            g = expand_lambda21(g, arcs[rng.uniform_big(len(arcs))][0], rng.uniform_int(n))
        elif kind == "l22":
            loops = sorted(g.a_loops)
            w_prime = loops[rng.uniform_big(len(loops))]
            v, w = rng.pair(n)
            g = expand_lambda22(g, w_prime, v, w, rng.sign())
        else:
            edges = sorted(tuple(sorted(e)) for e in g.a_edges)
            e = edges[rng.uniform_big(len(edges))]
            v, w = rng.pair(n)
            g = expand_kappa3(g, e, v, w, rng.sign())
    return g


def random_cyclically_reduced_graph(
    tau,
    rng,
    table: Optional[CountTable] = None,
    faithful: bool = False,
    branch: str = "bernoulli",
) -> Graph:
    """Uniform labeled connected cyclically reduced graph of type ``tau``.

    ``faithful=True`` draws every expansion parameter uniformly; the default
    places new vertices last and relabels once at the end. ``branch`` picks
    how the lambda2 branch is chosen: ``"bernoulli"`` (bit streaming) or
    ``"integer"`` (a full uniform integer).
    """
    tau = CombinatorialType(*tau)
    rng = _source(rng)
    table = table if table is not None else default_table()
    if tau.n % 6 == 0 and tuple(tau) == (tau.n, tau.n // 2, 0, 0, 0) and tau.n > 0:
        return random_silhouette_graph(tau.n, rng)
    if table.s(tau) == 0:
        raise EmptyTypeError(f"no connected cyclically reduced graph has type {tau}")
    base_t, steps = _plan(tau, rng, table, branch)
    base = _base_graph(base_t, rng)
    if faithful:
        return _build_faithful(base, steps, rng)
    return _build_fast(base, steps, rng)


def random_relabel(g: Graph, rng) -> Graph:
    """Compose the labels of a normalized graph with a uniform permutation."""
    rng = _source(rng)
    n = g.size
    if n <= 1:
        return g
    p = rng.permutation(n)
    return g.relabel(lambda x: p[x - 1])


# -- rooted reduced graphs ----------------------------------------------

_SIZE_ONE = {
    (1, 0, 0, 1, 1): ((1,), (1,)),
    (1, 0, 0, 1, 0): ((1,), ()),
    (1, 0, 0, 0, 1): ((), (1,)),
    (1, 0, 0, 0, 0): ((), ()),
}


def _size_one(a_loops, b_loops) -> Graph:
    return Graph(1, a_loops=a_loops, b_loops=b_loops, root=1)


def _open_loop(g: Graph, kind: str, q: int) -> Graph:
    """Delete the (q+1)-st loop of the given kind in label order and root at its vertex."""
    d = g.thaw()
    loops = sorted(d.a_loops if kind == "a_loop" else d.b_loops)
    v = loops[q]
    (d.a_loops if kind == "a_loop" else d.b_loops).discard(v)
    d.root = v
    return d.freeze()


def _draw_blocks(blocks: list, rng: RandomSource, table: CountTable, faithful: bool) -> Graph:
    total = sum(w for w, _, _ in blocks)
    p = rng.uniform_big(total)
    for weight, kind, tau in blocks:
        if p < weight:
            q = p // table.s(tau)
            g = random_cyclically_reduced_graph(tau, rng, table, faithful=faithful)
            if kind == "root":
                return g.with_root(q + 1)
            return _open_loop(g, kind, q)
        p -= weight
    raise AssertionError("block selection fell through")


def random_reduced_graph(tau, rng, table: Optional[CountTable] = None, faithful: bool = False) -> Graph:
    """Uniform labeled rooted reduced graph of combinatorial type ``tau``."""
    tau = CombinatorialType(*tau)
    rng = _source(rng)
    table = table if table is not None else default_table()
    if tau.n == 1 and tuple(tau) in _SIZE_ONE:
        return _size_one(*_SIZE_ONE[tuple(tau)])
    if table.L(tau) == 0:
        raise EmptyTypeError(f"no rooted reduced graph has type {tau}")
    n, k2, k3, l2, l3 = tau
    blocks = [
        (n * table.s(tau), "root", tau),
        ((l2 + 1) * table.s((n, k2, k3, l2 + 1, l3)), "a_loop", CombinatorialType(n, k2, k3, l2 + 1, l3)),
        ((l3 + 1) * table.s((n, k2, k3, l2, l3 + 1)), "b_loop", CombinatorialType(n, k2, k3, l2, l3 + 1)),
    ]
    return _draw_blocks(blocks, rng, table, faithful)


_SIZE_ONE_ISO = {
    (0, 0, 0): ((), ()),
    (1, 0, 0): ((1,), ()),
    (0, 1, 0): ((), (1,)),
    (1, 1, 0): ((1,), (1,)),
}


def random_subgroup_iso(
    n: int,
    sigma,
    rng,
    cyclic: bool = False,
    table: Optional[CountTable] = None,
    faithful: bool = False,
) -> Graph:
    """Uniform labeled rooted reduced graph of size ``n`` with isomorphism type ``sigma``.

    With ``cyclic=True`` only cyclically reduced graphs are drawn.
    """
    sigma = IsomorphismType(*sigma)
    rng = _source(rng)
    table = table if table is not None else default_table()
    if table.count_iso(n, sigma, cyclic) == 0:
        raise EmptyTypeError(f"no rooted reduced graph of size {n} has isomorphism type {sigma}")
    if n == 1:
        return _size_one(*_SIZE_ONE_ISO[tuple(sigma)])
    return _draw_blocks(table.iso_blocks(n, sigma, cyclic), rng, table, faithful)


__all__ = [
    "Bernoulli",
    "EmptyTypeError",
    "RandomSource",
    "SilhouetteAttempt",
    "bernoulli",
    "random_cyclically_reduced_graph",
    "random_reduced_graph",
    "random_relabel",
    "random_silhouette_graph",
    "random_subgroup_iso",
    "silhouette_attempt",
]
