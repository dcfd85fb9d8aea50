"""Exact counts of labeled cyclically reduced and rooted reduced graphs.

``s(tau)`` counts labeled connected cyclically reduced graphs of combinatorial
type ``tau``; ``L(tau)`` counts labeled rooted reduced graphs and
``H(tau) = L(tau)/n!`` counts subgroups. All arithmetic is on Python ints.
"""
from __future__ import annotations

import math
import struct
from pathlib import Path
from typing import Iterator, Optional, Union

from .core import CombinatorialType, IsomorphismType
from .moves import KAPPA3, LAMBDA21, LAMBDA22, LAMBDA3


class ExactDivisionError(ArithmeticError):
    """A division the recurrences expect to be exact left a remainder."""


def exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ExactDivisionError(f"{a} is not divisible by {b}")
    return q


def t2(m: int) -> int:
    """Fixed-point-free involutions of ``m`` points: (m-1)!!."""
    if m < 0 or m % 2:
        raise ValueError(f"t2 needs an even non-negative argument, got {m}")
    return math.prod(range(1, m, 2))


def t3(m: int) -> int:
    """Permutations of ``m`` points made only of 3-cycles."""
    if m < 0 or m % 3:
        raise ValueError(f"t3 needs a non-negative multiple of 3, got {m}")
    return math.prod((3 * i - 1) * (3 * i - 2) for i in range(1, m // 3 + 1))


BASE = {
    (1, 0, 0, 1, 1): 1,
    (2, 1, 1, 0, 0): 2,
    (2, 0, 1, 2, 0): 2,
    (2, 1, 0, 0, 2): 1,
}

# Rooted counts of size 1: the four subgroups of index 1 representation.
SIZE_ONE_L = {
    (1, 0, 0, 1, 1): 1,
    (1, 0, 0, 1, 0): 1,
    (1, 0, 0, 0, 1): 1,
    (1, 0, 0, 0, 0): 1,
}

SIZE_ONE_ISO = {(0, 0, 0): 1, (1, 0, 0): 1, (0, 1, 0): 1, (1, 1, 0): 1}


def _add(t: tuple, d: tuple) -> tuple:
    return tuple(x + y for x, y in zip(t, d))


def _valid(t: tuple) -> bool:
    return CombinatorialType(*t).is_valid_cyclic()


def types_of_size(n: int) -> Iterator[CombinatorialType]:
    """Every type of size ``n`` that passes the edge-count feasibility test."""
    for l2 in range(n % 2, n + 1, 2):
        k2 = (n - l2) // 2
        for k3 in range(n // 2 + 1):
            rest = n - 2 * k3
            for l3 in range(rest % 3, rest + 1, 3):
                yield CombinatorialType(n, k2, k3, l2, l3)


def _half(x: int) -> Optional[int]:
    if x < 0 or x % 2:
        return None
    return x // 2


_MAGIC = b"PSL2CNT\x00"
_VERSION = 1
_HEADER = struct.Struct(">8sHQ")
_RECORD = struct.Struct(">5IL")


class CountTable:
    """Memoized ``s(tau)`` values.

    Lazy fills mutate the memo, so concurrent writers must be serialized by
    the caller; once filled (e.g. by ``precompute``) reads are safe anywhere.
    """

    def __init__(self) -> None:
        self._s: dict[tuple, int] = {}
        self._sil: list[int] = [0]  # _sil[m] = s(6m)
        self._scaled: list[int] = [0]  # 72^m s(6m) / (6m-1)!
        self._rk: list[int] = [1]  # (6k)! / ((3k)! (2k)!)
        self._branch: dict[tuple, object] = {}

    def __len__(self) -> int:
        return len(self._s)

    def __contains__(self, tau) -> bool:
        return tuple(tau) in self._s

    def items(self):
        return self._s.items()

    # -- silhouettes -----------------------------------------------------

    def count_silhouette(self, n: int) -> int:
        """Connected labeled graphs of type ``(n, n/2, 0, 0, 0)`` for ``n`` a positive multiple of 6.

        Inclusion-exclusion over the component of vertex 1, rescaled so that
        no binomials appear: with ``R_k = (6k)!/((3k)!(2k)!)`` and
        ``B_N = 72^N s(6N)/(6N-1)!`` one has ``B_N = 6N R_N - sum B_m R_(N-m)``.
        ``silhouette_count_binomial`` evaluates the unscaled form.
        """
        if n < 6 or n % 6:
            return 0
        sil, scaled, rk = self._sil, self._scaled, self._rk
        top = n // 6
        while len(rk) <= top:
            k = len(rk)
            rk.append(exact_div(
                rk[-1] * math.prod(range(6 * k - 5, 6 * k + 1)),
                (3 * k) * (3 * k - 1) * (3 * k - 2) * (2 * k) * (2 * k - 1),
            ))
        for big in range(len(sil), top + 1):
            total = 6 * big * rk[big]
            for m in range(1, big):
                total -= scaled[m] * rk[big - m]
            scaled.append(total)
            sil.append(exact_div(total * math.factorial(6 * big - 1), 72**big))
        return sil[top]

    # -- cyclically reduced counts ---------------------------------------

    def _deps(self, t: tuple) -> tuple:
        n, k2, k3, l2, l3 = t
        if n <= 2:
            return ()
        if l3 > 0:
            return (_add(t, LAMBDA3),)
        if l2 > 0:
            return (_add(t, LAMBDA21), _add(t, LAMBDA22))
        if k3 > 0:
            return (_add(t, KAPPA3),)
        return ()

    def _get(self, t: tuple) -> int:
        return self._s[t] if _valid(t) else 0

    def _combine(self, t: tuple) -> int:
        n, k2, k3, l2, l3 = t
        if n <= 2:
            return BASE.get(t, 0)
        if l3 > 0:
            return exact_div(n * (l2 + 1) * self._get(_add(t, LAMBDA3)), l3)
        if l2 > 0:
            first = exact_div(n * (k3 + 1) * self._get(_add(t, LAMBDA21)), l2)
            return first + 2 * n * (n - 1) * self._get(_add(t, LAMBDA22))
        if k3 > 0:
            return exact_div(2 * n * (n - 1) * (k2 - 1) * self._get(_add(t, KAPPA3)), k3)
        return self.count_silhouette(n)

    def s(self, tau) -> int:
        """Labeled connected cyclically reduced graphs of type ``tau`` (0 for infeasible types)."""
        t = tuple(tau)
        if len(t) != 5 or not _valid(t):
            return 0
        memo = self._s
        hit = memo.get(t)
        if hit is not None:
            return hit
        stack = [t]
        while stack:
            top = stack[-1]
            if top in memo:
                stack.pop()
                continue
            missing = [d for d in self._deps(top) if _valid(d) and d not in memo]
            if missing:
                stack.extend(missing)
                continue
            memo[top] = self._combine(top)
            stack.pop()
        return memo[t]

    # -- rooted counts ---------------------------------------------------

    def L(self, tau) -> int:
        """Labeled rooted reduced graphs of type ``tau``."""
        n, k2, k3, l2, l3 = tau
        if min(tau) < 0 or n < 1:
            return 0
        if n == 1:
            return SIZE_ONE_L.get(tuple(tau), 0)
        return (
            n * self.s((n, k2, k3, l2, l3))
            + (l2 + 1) * self.s((n, k2, k3, l2 + 1, l3))
            + (l3 + 1) * self.s((n, k2, k3, l2, l3 + 1))
        )

    def H(self, tau) -> int:
        """Subgroups with a Stallings graph of type ``tau``."""
        n = tau[0]
        if n < 1:
            return 0
        return exact_div(self.L(tau), math.factorial(n))

    # -- isomorphism types -----------------------------------------------

    def iso_blocks(self, n: int, sigma, cyclic: bool = False) -> list:
        """The summands of ``count_iso`` as ``(weight, kind, tau)``.

        ``kind`` is ``"root"`` (root a cyclically reduced graph anywhere),
        ``"b_loop"`` (remove a b-loop and root there) or ``"a_loop"``;
        ``weight`` is ``multiplicity * s(tau)``. Zero summands are kept.
        """
        l2, l3, r = sigma
        base = n - 3 * l2 - 4 * l3 - 6 * r
        out = []
        k2, k3 = _half(n - l2), _half(base + 6)
        tau = None if k2 is None or k3 is None else CombinatorialType(n, k2, k3, l2, l3)
        out.append((n * self.s(tau) if tau else 0, "root", tau))
        if cyclic:
            return out
        k3p = _half(base + 2)
        tau = None if k2 is None or k3p is None else CombinatorialType(n, k2, k3p, l2, l3 + 1)
        out.append(((l3 + 1) * self.s(tau) if tau else 0, "b_loop", tau))
        k2pp, k3pp = _half(n - 1 - l2), _half(base + 3)
        tau = None if k2pp is None or k3pp is None else CombinatorialType(n, k2pp, k3pp, l2 + 1, l3)
        out.append(((l2 + 1) * self.s(tau) if tau else 0, "a_loop", tau))
        return out

    def count_iso(self, n: int, sigma, cyclic: bool = False) -> int:
        """Labeled rooted reduced graphs of size ``n`` whose subgroup has isomorphism type ``sigma``."""
        sigma = IsomorphismType(*sigma)
        if n < 1 or min(sigma) < 0:
            return 0
        if n == 1:
            if cyclic:
                return int(tuple(sigma) == (1, 1, 0))
            return SIZE_ONE_ISO.get(tuple(sigma), 0)
        return sum(w for w, _, _ in self.iso_blocks(n, sigma, cyclic))

    def count_iso_subgroups(self, n: int, sigma, cyclic: bool = False) -> int:
        return exact_div(self.count_iso(n, sigma, cyclic), math.factorial(n))

    # -- bulk fill and cache ---------------------------------------------

    def precompute(self, nmax: int) -> "CountTable":
        for n in range(1, nmax + 1):
            for t in types_of_size(n):
                self.s(t)
        return self

    def save(self, path: Union[str, Path]) -> None:
        """Write the memo as a versioned binary file of (type, big-endian magnitude) records."""
        with open(path, "wb") as f:
            f.write(_HEADER.pack(_MAGIC, _VERSION, len(self._s)))
            for t in sorted(self._s):
                v = self._s[t]
                raw = v.to_bytes((v.bit_length() + 7) // 8, "big")
                f.write(_RECORD.pack(*t, len(raw)))
                f.write(raw)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "CountTable":
        table = cls()
        data = Path(path).read_bytes()
        if len(data) < _HEADER.size:
            raise ValueError(f"{path}: truncated count table")
        magic, version, count = _HEADER.unpack_from(data)
        if magic != _MAGIC:
            raise ValueError(f"{path}: not a count table")
        if version != _VERSION:
            raise ValueError(f"{path}: unsupported table version {version}")
        pos = _HEADER.size
        for _ in range(count):
            if pos + _RECORD.size > len(data):
                raise ValueError(f"{path}: truncated count table")
            *t, size = _RECORD.unpack_from(data, pos)
            pos += _RECORD.size
            if pos + size > len(data):
                raise ValueError(f"{path}: truncated count table")
            table._s[tuple(t)] = int.from_bytes(data[pos : pos + size], "big")
            pos += size
        if pos != len(data):
            raise ValueError(f"{path}: trailing bytes in count table")
        return table


def silhouette_count_binomial(n: int) -> int:
    """Unscaled inclusion-exclusion for ``s(n, n/2, 0, 0, 0)``; quadratic in binomials, for cross-checks."""
    if n < 6 or n % 6:
        return 0
    prod = [t2(6 * m) * t3(6 * m) for m in range(n // 6 + 1)]
    sil = [0]
    for big in range(1, n // 6 + 1):
        total = prod[big]
        for m in range(1, big):
            total -= math.comb(6 * big - 1, 6 * m - 1) * sil[m] * prod[big - m]
        sil.append(total)
    return sil[-1]


_DEFAULT = CountTable()


def default_table() -> CountTable:
    return _DEFAULT


def s(tau, table: Optional[CountTable] = None) -> int:
    return (table or _DEFAULT).s(tau)


def L(tau, table: Optional[CountTable] = None) -> int:
    return (table or _DEFAULT).L(tau)


def H(tau, table: Optional[CountTable] = None) -> int:
    return (table or _DEFAULT).H(tau)


def count_silhouette(n: int, table: Optional[CountTable] = None) -> int:
    return (table or _DEFAULT).count_silhouette(n)


def count_iso(n: int, sigma, cyclic: bool = False, table: Optional[CountTable] = None) -> int:
    return (table or _DEFAULT).count_iso(n, sigma, cyclic)


def precompute(nmax: int, table: Optional[CountTable] = None) -> CountTable:
    return (table if table is not None else CountTable()).precompute(nmax)
