"""Rewriting moves on cyclically reduced graphs and their inverse expansions.

Contractions (``apply_*``) delete vertices without renaming the survivors, so
their output is weakly labeled. Expansions (``expand_*``) take a normalized
graph, open up room for the new labels with ``shift_v``/``shift_vw`` and
rebuild the larger graph; they are the inverse bijections used for sampling.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Optional, Union

from .core import (
    Draft,
    Graph,
    GraphError,
    delta1,
    delta2,
    is_cyclically_reduced,
    is_normalized,
)

LAMBDA3 = (-1, -1, 0, 1, -1)
LAMBDA21 = (-1, 0, 1, -1, 0)
LAMBDA22 = (-2, -1, -1, 0, 0)
KAPPA3 = (-2, -1, -1, 0, 0)
EXC = (-1, 0, -1, -1, 1)
ZERO = (0, 0, 0, 0, 0)


def shift_v(x: int, v: int) -> int:
    return x if x < v else x + 1


def shift_vw(x: int, v: int, w: int) -> int:
    if v == w:
        raise ValueError("shift_vw needs distinct v and w")
    lo, hi = (v, w) if v < w else (w, v)
    if x < lo:
        return x
    if x < hi - 1:
        return x + 1
    return x + 2


# -- move descriptions ---------------------------------------------------


@dataclass(frozen=True)
class Lambda3:
    """Drop b-loop vertex ``v`` and turn its a-edge partner ``w`` into an a-loop."""

    v: int
    w: int
    kind: ClassVar[str] = "lambda3"
    delta: ClassVar[tuple] = LAMBDA3

    def apply(self, g: Graph) -> Graph:
        return apply_lambda3(g, self.v, self.w)

    def __str__(self) -> str:
        return f"lambda3(v={self.v},w={self.w})"


@dataclass(frozen=True)
class Lambda21:
    """Drop a-loop vertex ``v`` sitting on a b-triangle; ``w_prime`` is its b-successor."""

    v: int
    w_prime: int
    kind: ClassVar[str] = "lambda21"
    delta: ClassVar[tuple] = LAMBDA21

    def apply(self, g: Graph) -> Graph:
        return apply_lambda21(g, self.v)

    def __str__(self) -> str:
        return f"lambda21(v={self.v},w'={self.w_prime})"


@dataclass(frozen=True)
class Lambda22:
    """Drop a-loop vertex ``v`` and its isolated b-neighbour ``w``; a-loop moves to ``w_prime``.

    ``eps`` is +1 for the arc ``v -> w`` and -1 for ``w -> v``.
    """

    v: int
    w: int
    w_prime: int
    eps: int
    kind: ClassVar[str] = "lambda22"
    delta: ClassVar[tuple] = LAMBDA22

    def apply(self, g: Graph) -> Graph:
        return apply_lambda22(g, self.v, self.w, self.w_prime)

    def __str__(self) -> str:
        arrow = "->" if self.eps > 0 else "<-"
        return f"lambda22(v{arrow}w,v={self.v},w={self.w},w'={self.w_prime})"


@dataclass(frozen=True)
class Kappa3:
    """Collapse the isolated b-arc ``v -> w`` and join ``v_prime`` to ``w_prime`` by an a-edge."""

    v: int
    w: int
    v_prime: int
    w_prime: int
    kind: ClassVar[str] = "kappa3"
    delta: ClassVar[tuple] = KAPPA3

    def apply(self, g: Graph) -> Graph:
        return apply_kappa3(g, self.v, self.w, self.v_prime, self.w_prime)

    def __str__(self) -> str:
        return f"kappa3(v={self.v}->w={self.w},v'={self.v_prime},w'={self.w_prime})"


@dataclass(frozen=True)
class Exceptional:
    """Terminal move on a 1- or 2-vertex graph. ``case`` is ``delta1``, ``delta2`` or ``delta3``."""

    case: str
    kind: ClassVar[str] = "exceptional"

    @property
    def delta(self) -> tuple:
        return EXC if self.case == "delta3" else ZERO

    def apply(self, g: Graph) -> Graph:
        return apply_exceptional(g)

    def __str__(self) -> str:
        return f"exceptional({self.case})"


Move = Union[Lambda3, Lambda21, Lambda22, Kappa3, Exceptional]


# -- applicability on a mutable draft ------------------------------------


def _lambda3_at(d: Draft, v: int) -> Optional[Lambda3]:
    if v in d.b_loops and len(d.labels) >= 2:
        w = d.a_mate.get(v)
        if w is not None:
            return Lambda3(v, w)
    return None


def _lambda2_at(d: Draft, v: int) -> Optional[Union[Lambda21, Lambda22]]:
    if v not in d.a_loops or len(d.labels) < 3:
        return None
    nxt = d.b_next.get(v)
    if nxt is not None and nxt in d.b_next:
        return Lambda21(v, nxt)
    if nxt is not None:
        w, eps = nxt, 1
    else:
        w, eps = d.b_prev.get(v), -1
        if w is None:
            return None
    wp = d.a_mate.get(w)
    if wp is None:
        return None
    return Lambda22(v, w, wp, eps)


def _kappa3_at(d: Draft, v: int) -> Optional[Kappa3]:
    w = d.b_next.get(v)
    if w is None or w in d.b_next or len(d.labels) < 4:
        return None
    vp = d.a_mate.get(v)
    wp = d.a_mate.get(w)
    if vp is None or wp is None or vp == w:
        return None
    return Kappa3(v, w, vp, wp)


def _exceptional(d: Draft) -> Optional[Exceptional]:
    n = len(d.labels)
    if n == 1:
        (v,) = d.labels
        if v != 1 and v in d.a_loops and v in d.b_loops:
            return Exceptional("delta1")
    elif n == 2:
        if len(d.a_loops) == 2 and len(d.b_next) == 1:
            return Exceptional("delta3")
        if len(d.a_mate) == 2 and len(d.b_next) == 1 and d.b_next != {1: 2}:
            return Exceptional("delta2")
    return None


def _run(d: Draft, m: Move) -> None:
    """Apply an already-validated move to ``d`` in place."""
    if isinstance(m, Lambda3):
        d.remove_vertex(m.v)
        d.a_loops.add(m.w)
    elif isinstance(m, Lambda21):
        d.remove_vertex(m.v)
    elif isinstance(m, Lambda22):
        d.remove_vertex(m.v)
        d.remove_vertex(m.w)
        d.a_loops.add(m.w_prime)
    elif isinstance(m, Kappa3):
        d.remove_vertex(m.v)
        d.remove_vertex(m.w)
        d.add_a_edge(m.v_prime, m.w_prime)
    else:
        if m.case == "delta2":
            ((u, v),) = d.b_next.items()
            d.relabel({u: 1, v: 2}.__getitem__)
        else:
            fresh = delta1().thaw()
            d.labels, d.a_loops, d.b_loops = fresh.labels, fresh.a_loops, fresh.b_loops
            d.a_mate, d.b_next, d.b_prev = fresh.a_mate, fresh.b_next, fresh.b_prev
            d.root = None


def draft_moves(d: Draft) -> list:
    """All moves applicable to ``d`` in the canonical order."""
    out: list = []
    for v in sorted(d.b_loops):
        m = _lambda3_at(d, v)
        if m is not None:
            out.append(m)
    lam2 = [m for m in (_lambda2_at(d, v) for v in sorted(d.a_loops)) if m is not None]
    out.extend(m for m in lam2 if isinstance(m, Lambda21))
    out.extend(m for m in lam2 if isinstance(m, Lambda22))
    for v in sorted(d.b_next):
        m = _kappa3_at(d, v)
        if m is not None:
            out.append(m)
    m = _exceptional(d)
    if m is not None:
        out.append(m)
    return out


def enumerate_moves(g: Graph) -> list:
    """Every applicable move: lambda3, lambda21, lambda22, kappa3, exceptional; ascending location within each."""
    return draft_moves(g.thaw())


# -- contractions --------------------------------------------------------


def _require_cr(g: Graph) -> None:
    if not is_cyclically_reduced(g):
        raise GraphError("move needs a cyclically reduced graph")


def apply_lambda3(g: Graph, v: int, w: int) -> Graph:
    _require_cr(g)
    if g.size < 2:
        raise GraphError("lambda3 needs at least 2 vertices")
    if v not in g.b_loops:
        raise GraphError(f"lambda3: no b-loop at {v}")
    if v == w or g.a_mate(v) != w:
        raise GraphError(f"lambda3: no isolated a-edge {{{v},{w}}}")
    d = g.thaw()
    _run(d, Lambda3(v, w))
    return d.freeze()


def apply_lambda21(g: Graph, v: int) -> Graph:
    _require_cr(g)
    if g.size < 3:
        raise GraphError("lambda21 needs at least 3 vertices")
    if v not in g.a_loops:
        raise GraphError(f"lambda21: no a-loop at {v}")
    if not g.on_triangle(v):
        raise GraphError(f"lambda21: {v} is not on a b-triangle")
    d = g.thaw()
    _run(d, Lambda21(v, g.b_next[v]))
    return d.freeze()


def apply_lambda22(g: Graph, v: int, w: int, w_prime: int) -> Graph:
    _require_cr(g)
    if g.size < 3:
        raise GraphError("lambda22 needs at least 3 vertices")
    if len({v, w, w_prime}) != 3:
        raise GraphError("lambda22: v, w, w' must be pairwise distinct")
    if v not in g.a_loops:
        raise GraphError(f"lambda22: no a-loop at {v}")
    if g.b_next.get(v) == w:
        eps = 1
    elif g.b_next.get(w) == v:
        eps = -1
    else:
        raise GraphError(f"lambda22: no b-arc between {v} and {w}")
    if g.on_triangle(v):
        raise GraphError(f"lambda22: b-edge {v}-{w} is not isolated")
    if g.a_mate(w) != w_prime:
        raise GraphError(f"lambda22: no isolated a-edge {{{w},{w_prime}}}")
    d = g.thaw()
    _run(d, Lambda22(v, w, w_prime, eps))
    return d.freeze()


def apply_kappa3(g: Graph, v: int, w: int, v_prime: int, w_prime: int) -> Graph:
    _require_cr(g)
    if g.size < 4:
        raise GraphError("kappa3 needs at least 4 vertices")
    if len({v, w, v_prime, w_prime}) != 4:
        raise GraphError("kappa3: vertices must be pairwise distinct")
    if g.b_next.get(v) != w or w in g.b_next:
        raise GraphError(f"kappa3: no isolated b-arc {v}->{w}")
    if g.a_mate(v) != v_prime:
        raise GraphError(f"kappa3: no isolated a-edge {{{v},{v_prime}}}")
    if g.a_mate(w) != w_prime:
        raise GraphError(f"kappa3: no isolated a-edge {{{w},{w_prime}}}")
    d = g.thaw()
    _run(d, Kappa3(v, w, v_prime, w_prime))
    return d.freeze()


def apply_exceptional(g: Graph) -> Graph:
    d = g.thaw()
    m = _exceptional(d)
    if m is None:
        raise GraphError("no exceptional move applies")
    _run(d, m)
    return d.freeze()


def apply_move(g: Graph, m: Move) -> Graph:
    return m.apply(g)


# -- expansions ----------------------------------------------------------


def _require_expandable(d: Graph) -> None:
    if not is_normalized(d):
        raise GraphError("expansion needs a normalized graph")
    _require_cr(d)


def _check_pos(x: int, hi: int, name: str) -> None:
    if isinstance(x, bool) or not isinstance(x, int) or not 1 <= x <= hi:
        raise GraphError(f"{name}={x!r} is outside 1..{hi}")


def expand_lambda3(d: Graph, aloop_at: int, v: int) -> Graph:
    """Inverse of lambda3: new vertex ``v`` with a b-loop, a-edge to the old a-loop vertex."""
    _require_expandable(d)
    if aloop_at not in d.a_loops:
        raise GraphError(f"expand_lambda3: no a-loop at {aloop_at}")
    _check_pos(v, d.size + 1, "v")
    g = d.thaw()
    g.relabel(lambda x: x if x < v else x + 1)
    w = shift_v(aloop_at, v)
    g.a_loops.discard(w)
    g.labels.add(v)
    g.b_loops.add(v)
    g.add_a_edge(v, w)
    return g.freeze()


def expand_lambda21(d: Graph, bedge_from: int, v: int) -> Graph:
    """Inverse of lambda21: close the isolated arc at ``bedge_from`` into a triangle through ``v``."""
    _require_expandable(d)
    tgt = d.b_next.get(bedge_from)
    if tgt is None or tgt in d.b_next:
        raise GraphError(f"expand_lambda21: no isolated b-arc starting at {bedge_from}")
    _check_pos(v, d.size + 1, "v")
    g = d.thaw()
    g.relabel(lambda x: x if x < v else x + 1)
    src, tgt = shift_v(bedge_from, v), shift_v(tgt, v)
    g.labels.add(v)
    g.a_loops.add(v)
    g.add_b_arc(tgt, v)
    g.add_b_arc(v, src)
    return g.freeze()


def expand_lambda22(d: Graph, aloop_at: int, v: int, w: int, eps: int) -> Graph:
    """Inverse of lambda22: a-loop vertex ``v`` joined by a b-edge to ``w``, which is a-linked to the old loop vertex."""
    _require_expandable(d)
    if aloop_at not in d.a_loops:
        raise GraphError(f"expand_lambda22: no a-loop at {aloop_at}")
    _check_pos(v, d.size + 2, "v")
    _check_pos(w, d.size + 2, "w")
    if v == w:
        raise GraphError("expand_lambda22: v and w must differ")
    if eps not in (1, -1):
        raise GraphError("eps must be +1 or -1")
    g = d.thaw()
    g.relabel(lambda x: shift_vw(x, v, w))
    wp = shift_vw(aloop_at, v, w)
    g.a_loops.discard(wp)
    g.labels.update((v, w))
    g.a_loops.add(v)
    if eps == 1:
        g.add_b_arc(v, w)
    else:
        g.add_b_arc(w, v)
    g.add_a_edge(w, wp)
    return g.freeze()


def expand_kappa3(d: Graph, aedge, v: int, w: int, eps: int) -> Graph:
    """Inverse of kappa3: split the a-edge ``aedge`` around a new b-arc ``v -> w``.

    ``eps = +1`` links ``v`` to the smaller end of ``aedge``, ``-1`` to the larger one.
    """
    _require_expandable(d)
    x, y = sorted(aedge)
    if x == y or d.a_mate(x) != y:
        raise GraphError(f"expand_kappa3: no isolated a-edge {{{x},{y}}}")
    _check_pos(v, d.size + 2, "v")
    _check_pos(w, d.size + 2, "w")
    if v == w:
        raise GraphError("expand_kappa3: v and w must differ")
    if eps not in (1, -1):
        raise GraphError("eps must be +1 or -1")
    g = d.thaw()
    g.relabel(lambda t: shift_vw(t, v, w))
    lo, hi = shift_vw(x, v, w), shift_vw(y, v, w)
    del g.a_mate[lo], g.a_mate[hi]
    g.labels.update((v, w))
    g.add_b_arc(v, w)
    if eps == 1:
        g.add_a_edge(v, lo)
        g.add_a_edge(w, hi)
    else:
        g.add_a_edge(v, hi)
        g.add_a_edge(w, lo)
    return g.freeze()


def is_preferred_delta2(g: Graph) -> bool:
    return g == delta2()
