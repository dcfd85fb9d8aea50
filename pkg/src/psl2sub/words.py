"""Geodesic normal forms of PSL2(Z) elements and membership in a Stallings graph.

Words are ASCII strings over ``a``, ``b`` and ``B`` (= b^-1). ``A`` is accepted
on input and read as ``a`` since a is an involution.
"""
from __future__ import annotations

import re

from .core import Graph, GraphError

_REWRITE = {
    "aa": "",
    "bB": "",
    "Bb": "",
    "bb": "B",
    "BB": "b",
}

_NORMAL = re.compile(r"^(?:[bB]?(?:a[bB])*a?)$")


def _check_letters(w: str) -> None:
    bad = set(w) - set("aAbB")
    if bad:
        raise ValueError(f"letters {''.join(sorted(bad))!r} are not in {{a, A, b, B}}")


def normalize_word(w: str) -> str:
    """Shortest representative of ``w`` (leftmost-innermost rewriting to a fixed point)."""
    _check_letters(w)
    stack: list[str] = []
    for c in w.replace("A", "a"):
        stack.append(c)
        while len(stack) >= 2:
            rhs = _REWRITE.get(stack[-2] + stack[-1])
            if rhs is None:
                break
            del stack[-2:]
            stack.extend(rhs)
    return "".join(stack)


def is_normal(w: str) -> bool:
    """True iff ``w`` is a geodesic word: length <= 1, or ``a`` alternating with ``b``/``B``."""
    return bool(_NORMAL.match(w))


def read_word(g: Graph, start: int, w: str):
    """End vertex of the path reading ``w`` from ``start``; None when some transition is missing."""
    v = start
    for c in w:
        if c == "a" or c == "A":
            v = g.a_neighbor(v)
        elif c == "b":
            v = g.b_succ(v)
        elif c == "B":
            v = g.b_pred(v)
        else:
            raise ValueError(f"bad letter {c!r}")
        if v is None:
            return None
    return v


def member(g: Graph, w: str) -> bool:
    """Whether the element ``w`` lies in the subgroup whose Stallings graph is ``g``."""
    if g.root is None:
        raise GraphError("membership needs a rooted graph")
    return read_word(g, g.root, normalize_word(w)) == g.root
