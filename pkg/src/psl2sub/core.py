"""Vertex-labeled PSL2(Z) graphs: data model, predicates, types, (de)serialization.

A graph carries an *a-structure* (a-loops and isolated, undirected a-edges
forming a partial matching) and a *b-structure* (b-loops, and directed
b-arcs whose weak components are single arcs or directed triangles).
Vertices are named by distinct positive integers; a graph is *normalized*
when its labels are exactly ``1..n``.
"""
from __future__ import annotations

import json
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional


class GraphError(ValueError):
    """Raised when a graph violates a structural invariant or a precondition."""


class CombinatorialType(NamedTuple):
    """``(n, k2, k3, l2, l3)``: size, isolated a-edges, isolated b-edges, a-loops, b-loops."""

    n: int
    k2: int
    k3: int
    l2: int
    l3: int

    def plus(self, delta: Iterable[int]) -> "CombinatorialType":
        return CombinatorialType(*(x + d for x, d in zip(self, delta)))

    def phi(self) -> int:
        """Linear functional ``n - 2k3 - 3l2 - 4l3``; equals ``6(r - 1)`` for cyclically reduced graphs."""
        return self.n - 2 * self.k3 - 3 * self.l2 - 4 * self.l3

    def nonnegative(self) -> bool:
        return min(self) >= 0

    def is_valid_cyclic(self) -> bool:
        """Edge-count feasibility for a cyclically reduced graph of this type."""
        if not self.nonnegative() or self.n < 1:
            return False
        rest = self.n - 2 * self.k3 - self.l3
        return self.n == 2 * self.k2 + self.l2 and rest >= 0 and rest % 3 == 0

    def is_valid_a_defect(self) -> bool:
        """Feasibility for a rooted graph whose root lacks an a-edge."""
        if not self.nonnegative() or self.n < 1:
            return False
        rest = self.n - 2 * self.k3 - self.l3
        return self.n - 1 == 2 * self.k2 + self.l2 and rest >= 0 and rest % 3 == 0

    def is_valid_b_defect(self) -> bool:
        """Feasibility for a rooted graph whose root lacks a b-edge."""
        if not self.nonnegative() or self.n < 1:
            return False
        rest = self.n - 1 - 2 * self.k3 - self.l3
        return self.n == 2 * self.k2 + self.l2 and rest >= 0 and rest % 3 == 0

    def __str__(self) -> str:
        return "(%d,%d,%d,%d,%d)" % tuple(self)


class IsomorphismType(NamedTuple):
    """Kurosh data ``(l2, l3, r)``: copies of Z2, copies of Z3, free rank."""

    l2: int
    l3: int
    r: int

    def __str__(self) -> str:
        return "(%d,%d,%d)" % tuple(self)


def _as_label(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise GraphError(f"vertex label must be an int, got {x!r}")
    if x < 1:
        raise GraphError(f"vertex label must be positive, got {x}")
    return x


class Graph:
    """Immutable PSL2(Z) graph.

    ``b_edges`` lists directed b-arcs ``(source, target)``; a b-triangle is
    given by its three arcs. b-loops are kept apart from the arcs.
    Passing an int as ``labels`` means ``1..labels``.
    """

    __slots__ = ("_labels", "_a_loops", "_a_mate", "_b_loops", "_b_next", "_b_prev", "_root", "_hash")

    def __init__(
        self,
        labels,
        a_loops: Iterable[int] = (),
        a_edges: Iterable[Iterable[int]] = (),
        b_loops: Iterable[int] = (),
        b_edges: Iterable[Iterable[int]] = (),
        root: Optional[int] = None,
    ):
        if isinstance(labels, int) and not isinstance(labels, bool):
            labels = range(1, labels + 1)
        labels = [_as_label(x) for x in labels]
        label_set = frozenset(labels)
        if len(label_set) != len(labels):
            raise GraphError("duplicate vertex labels")

        def member(x):
            x = _as_label(x)
            if x not in label_set:
                raise GraphError(f"unknown vertex {x}")
            return x

        a_loop_list = [member(x) for x in a_loops]
        a_loop_set = frozenset(a_loop_list)
        if len(a_loop_set) != len(a_loop_list):
            raise GraphError("duplicate a-loop")
        a_mate: dict[int, int] = {}
        for edge in a_edges:
            u, v = (member(x) for x in edge)
            if u == v:
                raise GraphError(f"a-edge {{{u},{v}}} is a loop; use a_loops")
            for x in (u, v):
                if x in a_mate or x in a_loop_set:
                    raise GraphError(f"vertex {x} meets the a-structure twice")
            a_mate[u] = v
            a_mate[v] = u

        b_loop_list = [member(x) for x in b_loops]
        b_loop_set = frozenset(b_loop_list)
        if len(b_loop_set) != len(b_loop_list):
            raise GraphError("duplicate b-loop")
        b_next: dict[int, int] = {}
        b_prev: dict[int, int] = {}
        for arc in b_edges:
            u, v = (member(x) for x in arc)
            if u == v:
                raise GraphError(f"b-arc {u}->{v} is a loop; use b_loops")
            if u in b_loop_set or v in b_loop_set:
                raise GraphError(f"b-arc {u}->{v} touches a b-loop vertex")
            if u in b_next:
                raise GraphError(f"vertex {u} has two outgoing b-arcs")
            if v in b_prev:
                raise GraphError(f"vertex {v} has two incoming b-arcs")
            b_next[u] = v
            b_prev[v] = u
        for u, v in b_next.items():
            x = b_next.get(v)
            if x is None:
                continue
            if x == u:
                raise GraphError(f"b-arcs {u}<->{v} form a 2-cycle")
            if b_next.get(x) != u:
                raise GraphError(f"b-path {u}->{v}->{x} is not closed into a triangle")

        if root is not None:
            root = member(root)

        self._labels = label_set
        self._a_loops = a_loop_set
        self._a_mate = a_mate
        self._b_loops = b_loop_set
        self._b_next = b_next
        self._b_prev = b_prev
        self._root = root
        self._hash = None

    @classmethod
    def _trusted(cls, labels, a_loops, a_mate, b_loops, b_next, root=None, b_prev=None) -> "Graph":
        # Caller guarantees the invariants; arguments are owned by the new graph.
        g = object.__new__(cls)
        g._labels = frozenset(labels)
        g._a_loops = frozenset(a_loops)
        g._a_mate = a_mate
        g._b_loops = frozenset(b_loops)
        g._b_next = b_next
        g._b_prev = b_prev if b_prev is not None else {v: u for u, v in b_next.items()}
        g._root = root
        g._hash = None
        return g

    # -- accessors ------------------------------------------------------

    @property
    def labels(self) -> frozenset:
        return self._labels

    @property
    def vertices(self) -> list[int]:
        """Labels in increasing order."""
        return sorted(self._labels)

    @property
    def size(self) -> int:
        return len(self._labels)

    def __len__(self) -> int:
        return len(self._labels)

    @property
    def root(self) -> Optional[int]:
        return self._root

    @property
    def a_loops(self) -> frozenset:
        return self._a_loops

    @property
    def b_loops(self) -> frozenset:
        return self._b_loops

    @property
    def a_edges(self) -> frozenset:
        """Isolated a-edges as ``(smaller, larger)`` pairs."""
        return frozenset((u, v) for u, v in self._a_mate.items() if u < v)

    @property
    def b_next(self) -> Mapping[int, int]:
        return MappingProxyType(self._b_next)

    @property
    def b_edges(self) -> list[tuple[int, int]]:
        """All directed b-arcs (isolated and triangle), sorted."""
        return sorted(self._b_next.items())

    def a_neighbor(self, v: int) -> Optional[int]:
        """Vertex reached from ``v`` by reading ``a`` (``v`` itself across a loop)."""
        if v in self._a_loops:
            return v
        return self._a_mate.get(v)

    def a_mate(self, v: int) -> Optional[int]:
        """Other end of the isolated a-edge at ``v``, if any."""
        return self._a_mate.get(v)

    def b_succ(self, v: int) -> Optional[int]:
        if v in self._b_loops:
            return v
        return self._b_next.get(v)

    def b_pred(self, v: int) -> Optional[int]:
        if v in self._b_loops:
            return v
        return self._b_prev.get(v)

    def has_a(self, v: int) -> bool:
        return v in self._a_loops or v in self._a_mate

    def has_b(self, v: int) -> bool:
        return v in self._b_loops or v in self._b_next or v in self._b_prev

    def on_triangle(self, v: int) -> bool:
        w = self._b_next.get(v)
        return w is not None and w in self._b_next

    def isolated_b_edges(self) -> list[tuple[int, int]]:
        """Arcs not lying on a b-triangle, sorted by source."""
        return sorted((u, v) for u, v in self._b_next.items() if v not in self._b_next)

    def b_triangles(self) -> list[tuple[int, int, int]]:
        """Triangles as ``(min, next, next)`` following arc direction."""
        out = []
        for u, v in self._b_next.items():
            x = self._b_next.get(v)
            if x is not None and u < v and u < x:
                out.append((u, v, x))
        return sorted(out)

    def neighbors(self, v: int) -> Iterator[int]:
        m = self._a_mate.get(v)
        if m is not None:
            yield m
        w = self._b_next.get(v)
        if w is not None:
            yield w
        w = self._b_prev.get(v)
        if w is not None:
            yield w

    # -- derived graphs -----------------------------------------------

    def relabel(self, mapping) -> "Graph":
        """Rename vertices through ``mapping`` (a dict or callable), which must be injective."""
        f = mapping.__getitem__ if hasattr(mapping, "__getitem__") else mapping
        new_labels = [f(x) for x in self._labels]
        if len(set(new_labels)) != len(new_labels):
            raise GraphError("relabeling is not injective")
        for x in new_labels:
            _as_label(x)
        b_next = {f(u): f(v) for u, v in self._b_next.items()}
        return Graph._trusted(
            new_labels,
            (f(x) for x in self._a_loops),
            {f(u): f(v) for u, v in self._a_mate.items()},
            (f(x) for x in self._b_loops),
            b_next,
            None if self._root is None else f(self._root),
        )

    def with_root(self, root: Optional[int]) -> "Graph":
        if root is not None and root not in self._labels:
            raise GraphError(f"root {root} is not a vertex")
        return Graph._trusted(
            self._labels, self._a_loops, self._a_mate, self._b_loops, self._b_next, root, self._b_prev
        )

    def thaw(self) -> "Draft":
        return Draft(self)

    # -- equality -------------------------------------------------------

    def _key(self):
        return (
            self._labels,
            self._a_loops,
            frozenset(self._a_mate.items()),
            self._b_loops,
            frozenset(self._b_next.items()),
            self._root,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._labels == other._labels
            and self._root == other._root
            and self._a_loops == other._a_loops
            and self._b_loops == other._b_loops
            and self._a_mate == other._a_mate
            and self._b_next == other._b_next
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self) -> str:
        parts = [f"labels={self.vertices}"]
        if self._a_loops:
            parts.append(f"a_loops={sorted(self._a_loops)}")
        if self._a_mate:
            parts.append(f"a_edges={sorted(self.a_edges)}")
        if self._b_loops:
            parts.append(f"b_loops={sorted(self._b_loops)}")
        if self._b_next:
            parts.append(f"b_edges={self.b_edges}")
        if self._root is not None:
            parts.append(f"root={self._root}")
        return "Graph(" + ", ".join(parts) + ")"


class Draft:
    """Mutable working copy of a graph, used by moves and samplers.

    No invariant checking happens here; ``freeze`` hands the containers
    over to a new ``Graph`` without copying them.
    """

    __slots__ = ("labels", "a_loops", "a_mate", "b_loops", "b_next", "b_prev", "root")

    def __init__(self, g: Optional[Graph] = None):
        if g is None:
            self.labels, self.a_loops, self.b_loops = set(), set(), set()
            self.a_mate, self.b_next, self.b_prev = {}, {}, {}
            self.root = None
        else:
            self.labels = set(g._labels)
            self.a_loops = set(g._a_loops)
            self.a_mate = dict(g._a_mate)
            self.b_loops = set(g._b_loops)
            self.b_next = dict(g._b_next)
            self.b_prev = dict(g._b_prev)
            self.root = g._root

    def add_a_edge(self, u: int, v: int) -> None:
        self.a_mate[u] = v
        self.a_mate[v] = u

    def add_b_arc(self, u: int, v: int) -> None:
        self.b_next[u] = v
        self.b_prev[v] = u

    def remove_b_arc(self, u: int, v: int) -> None:
        del self.b_next[u]
        del self.b_prev[v]

    def remove_vertex(self, v: int) -> None:
        """Delete ``v`` and every edge incident to it."""
        self.labels.discard(v)
        self.a_loops.discard(v)
        self.b_loops.discard(v)
        m = self.a_mate.pop(v, None)
        if m is not None:
            del self.a_mate[m]
        w = self.b_next.pop(v, None)
        if w is not None:
            del self.b_prev[w]
        w = self.b_prev.pop(v, None)
        if w is not None:
            del self.b_next[w]
        if self.root == v:
            self.root = None

    def on_triangle(self, v: int) -> bool:
        w = self.b_next.get(v)
        return w is not None and w in self.b_next

    def relabel(self, f) -> None:
        """Apply the injective map ``f`` (callable) to every label in place."""
        self.labels = {f(x) for x in self.labels}
        self.a_loops = {f(x) for x in self.a_loops}
        self.b_loops = {f(x) for x in self.b_loops}
        self.a_mate = {f(u): f(v) for u, v in self.a_mate.items()}
        self.b_next = {f(u): f(v) for u, v in self.b_next.items()}
        self.b_prev = {f(u): f(v) for u, v in self.b_prev.items()}
        if self.root is not None:
            self.root = f(self.root)

    def freeze(self) -> Graph:
        return Graph._trusted(
            self.labels, self.a_loops, self.a_mate, self.b_loops, self.b_next, self.root, self.b_prev
        )


# -- predicates ----------------------------------------------------------


def is_connected(g: Graph) -> bool:
    """Undirected connectivity over all a- and b-adjacencies (the empty graph counts as connected)."""
    if g.size <= 1:
        return True
    start = next(iter(g._labels))
    seen = {start}
    stack = [start]
    a_mate, b_next, b_prev = g._a_mate, g._b_next, g._b_prev
    while stack:
        v = stack.pop()
        for w in (a_mate.get(v), b_next.get(v), b_prev.get(v)):
            if w is not None and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.size


def is_cyclically_reduced(g: Graph) -> bool:
    """Every vertex meets the a-structure and the b-structure.

    Connectivity is not part of this predicate; see ``is_connected``.
    """
    return all(g.has_a(v) and g.has_b(v) for v in g._labels)


def is_reduced(g: Graph) -> bool:
    """Rooted, connected, and every vertex other than the root meets both structures."""
    if g.root is None:
        raise GraphError("is_reduced needs a rooted graph")
    r = g.root
    if not all(v == r or (g.has_a(v) and g.has_b(v)) for v in g._labels):
        return False
    return is_connected(g)


def is_normalized(g: Graph) -> bool:
    n = g.size
    return all(1 <= x <= n for x in g._labels)


# -- types ---------------------------------------------------------------


def combinatorial_type(g: Graph) -> CombinatorialType:
    k3 = sum(1 for v in g._b_next.values() if v not in g._b_next)
    return CombinatorialType(g.size, len(g._a_mate) // 2, k3, len(g._a_loops), len(g._b_loops))


# The four size-1 subgroups: trivial, <a>, <b>, the whole group.
SIZE_ONE_ISOMORPHISM = {
    (False, False): IsomorphismType(0, 0, 0),
    (True, False): IsomorphismType(1, 0, 0),
    (False, True): IsomorphismType(0, 1, 0),
    (True, True): IsomorphismType(1, 1, 0),
}


def isomorphism_type(g: Graph) -> IsomorphismType:
    """Kurosh decomposition data of the subgroup represented by ``g``.

    ``g`` must be cyclically reduced (rooted or not) or a rooted reduced graph.
    """
    if g.size == 1:
        (v,) = g._labels
        if g.root is None and not (g.has_a(v) and g.has_b(v)):
            raise GraphError("a 1-vertex graph without both loops needs a root")
        return SIZE_ONE_ISOMORPHISM[(v in g._a_loops, v in g._b_loops)]
    t = combinatorial_type(g)
    phi = t.phi()
    if is_cyclically_reduced(g):
        num = 6 + phi
    else:
        if g.root is None or not is_reduced(g):
            raise GraphError("isomorphism_type needs a reduced or cyclically reduced graph")
        if g.has_a(g.root):
            num = 2 + phi  # root lacks its b-edge
        else:
            num = 3 + phi  # root lacks its a-edge
    r, rem = divmod(num, 6)
    if rem or r < 0:
        raise GraphError(f"type {t} yields a non-integral free rank {num}/6")
    return IsomorphismType(t.l2, t.l3, r)


# -- normalization -------------------------------------------------------


def normalize(g: Graph) -> Graph:
    """Relabel by the order-preserving bijection onto ``1..n``."""
    order = sorted(g._labels)
    if order and order[-1] == len(order):
        return g
    rank = {x: i for i, x in enumerate(order, 1)}
    return g.relabel(rank)


def graphs_equal(g1: Graph, g2: Graph) -> bool:
    return g1 == g2


# -- serialization ---------------------------------------------------------


def to_dict(g: Graph) -> dict:
    """JSON-ready dict; ``labels`` appears only for graphs that are not normalized."""
    d: dict = {"n": g.size}
    if not is_normalized(g):
        d["labels"] = g.vertices
    if g.root is not None:
        d["root"] = g.root
    d["a_loops"] = sorted(g.a_loops)
    d["b_loops"] = sorted(g.b_loops)
    d["a_edges"] = [list(e) for e in sorted(g.a_edges)]
    d["b_edges"] = [list(e) for e in g.b_edges]
    return d


def to_json(g: Graph) -> str:
    return json.dumps(to_dict(g), separators=(",", ":"))


def _int_list(obj, key) -> list:
    val = obj.get(key, [])
    if not isinstance(val, list):
        raise GraphError(f"'{key}' must be an array")
    return val


def _pair_list(obj, key) -> list:
    pairs = _int_list(obj, key)
    for p in pairs:
        if not isinstance(p, list) or len(p) != 2:
            raise GraphError(f"'{key}' entries must be 2-arrays, got {p!r}")
    return pairs


def from_dict(obj: Mapping) -> Graph:
    if not isinstance(obj, Mapping):
        raise GraphError("graph JSON must be an object")
    unknown = set(obj) - {"n", "labels", "root", "a_loops", "b_loops", "a_edges", "b_edges"}
    if unknown:
        raise GraphError(f"unknown keys {sorted(unknown)}")
    n = obj.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise GraphError("'n' must be a non-negative integer")
    labels = obj.get("labels")
    if labels is None:
        labels = list(range(1, n + 1))
    elif not isinstance(labels, list) or len(labels) != n:
        raise GraphError("'labels' must be an array of length n")
    a_edges = _pair_list(obj, "a_edges")
    keys = [frozenset(map(_as_label, e)) for e in a_edges]
    if len(set(keys)) != len(keys):
        raise GraphError("duplicate a-edge")
    b_edges = _pair_list(obj, "b_edges")
    if len({tuple(e) for e in b_edges}) != len(b_edges):
        raise GraphError("duplicate b-edge")
    return Graph(
        labels,
        a_loops=_int_list(obj, "a_loops"),
        a_edges=a_edges,
        b_loops=_int_list(obj, "b_loops"),
        b_edges=b_edges,
        root=obj.get("root"),
    )


def from_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON: {exc}") from None
    return from_dict(obj)


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for v in g.vertices:
        shape = "doublecircle" if v == g.root else "circle"
        lines.append(f'  {v} [shape={shape}];')
    for v in sorted(g.a_loops):
        lines.append(f'  {v} -> {v} [label="a", dir=none, style=dashed];')
    for u, v in sorted(g.a_edges):
        lines.append(f'  {u} -> {v} [label="a", dir=none, style=dashed];')
    for v in sorted(g.b_loops):
        lines.append(f'  {v} -> {v} [label="b"];')
    for u, v in g.b_edges:
        lines.append(f'  {u} -> {v} [label="b"];')
    lines.append("}")
    return "\n".join(lines)


# -- named small graphs ---------------------------------------------------


def delta1(label: int = 1) -> Graph:
    return Graph([label], a_loops=[label], b_loops=[label])


def delta2(src: int = 1, dst: int = 2) -> Graph:
    """Delta_2 with its b-arc ``src -> dst``; the defaults give the preferred labeling."""
    return Graph([src, dst], a_edges=[(src, dst)], b_edges=[(src, dst)])


def delta3(src: int = 1, dst: int = 2) -> Graph:
    return Graph([src, dst], a_loops=[src, dst], b_edges=[(src, dst)])


def delta4(u: int = 1, v: int = 2) -> Graph:
    return Graph([u, v], a_edges=[(u, v)], b_loops=[u, v])
