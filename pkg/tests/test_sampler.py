from __future__ import annotations

import math
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psl2sub.core import (
    combinatorial_type,
    delta1,
    delta2,
    delta3,
    is_connected,
    is_cyclically_reduced,
    is_reduced,
    isomorphism_type,
)
from psl2sub.counting import CountTable, t2, t3, types_of_size
from psl2sub.oracle import chi_square_uniform, enumerate_cyclically_reduced, enumerate_reduced
from psl2sub.sampler import (
    Bernoulli,
    EmptyTypeError,
    RandomSource,
    bernoulli,
    random_cyclically_reduced_graph,
    random_reduced_graph,
    random_relabel,
    random_silhouette_graph,
    random_subgroup_iso,
    silhouette_attempt,
)

P_MIN = 1e-4


class ScriptedBits:
    def __init__(self, bits):
        self.bits = list(bits)

    def next_bit(self):
        return self.bits.pop(0)


def test_random_source_is_deterministic():
    a, b = RandomSource(42), RandomSource(42)
    assert [a.uniform_big(10**30) for _ in range(5)] == [b.uniform_big(10**30) for _ in range(5)]
    assert [a.next_bit() for _ in range(100)] == [b.next_bit() for _ in range(100)]
    assert a.bits_consumed == b.bits_consumed > 0


def test_uniform_helpers():
    r = RandomSource(1)
    assert all(1 <= r.uniform_int(7) <= 7 for _ in range(500))
    assert sorted(r.permutation(9)) == list(range(1, 10))
    assert r.uniform_big(1) == 0
    assert all(v != w for v, w in (r.pair(3) for _ in range(200)))
    with pytest.raises(ValueError):
        r.uniform_big(0)


def test_uniform_big_attempts_are_few():
    r = RandomSource(3)
    N = 2**64 + 1  # worst case: almost half the draws are rejected
    before = r.bits_consumed
    for _ in range(2000):
        r.uniform_big(N)
    assert (r.bits_consumed - before) / 65 / 2000 <= 2.2


def test_bernoulli_attempt_by_hand():
    coin = Bernoulli(2, 5)  # 010 out of 101
    assert coin.attempt(ScriptedBits([1, 1])) is None
    assert coin.attempt(ScriptedBits([0, 1, 0])) is False
    assert coin.attempt(ScriptedBits([0, 0])) is True
    assert coin.attempt(ScriptedBits([1, 0, 1])) is None
    assert coin.attempt(ScriptedBits([1, 0, 0])) is False
    assert coin.attempts == 5


def test_bernoulli_trivial_and_errors():
    r = RandomSource(0)
    assert not any(bernoulli(0, 7, r) for _ in range(200))
    assert all(bernoulli(7, 7, r) for _ in range(200))
    with pytest.raises(ValueError):
        Bernoulli(4, 3)
    with pytest.raises(ValueError):
        Bernoulli(0, 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 2**80), st.data())
def test_bernoulli_attempt_agrees_with_comparison(total, data):
    s = data.draw(st.integers(0, total))
    nbits = total.bit_length()
    x = data.draw(st.integers(0, 2**nbits - 1))
    bits = [(x >> (nbits - 1 - i)) & 1 for i in range(nbits)]
    out = Bernoulli(s, total).attempt(ScriptedBits(bits))
    assert out == (None if x >= total else x < s)


def test_silhouette_attempt_structure():
    a = silhouette_attempt(12, RandomSource(5))
    assert sorted(a.a_mate) == list(range(1, 13))
    g = random_silhouette_graph(12, RandomSource(5))
    assert combinatorial_type(g) == (12, 6, 0, 0, 0) and is_connected(g)
    with pytest.raises(ValueError):
        silhouette_attempt(8, RandomSource(0))


def test_rejection_rate_matches_exact_probability():
    n, attempts = 48, 20_000
    t = CountTable()
    p = 1 - t.count_silhouette(n) / (t2(n) * t3(n))
    assert abs(p - 0.02452) < 5e-5
    assert abs(n * p - 5 / 6) < 0.35
    rng = RandomSource(4848)
    rate = sum(1 for _ in range(attempts) if not silhouette_attempt(n, rng).connected) / attempts
    assert abs(rate - p) <= 4 * math.sqrt(p * (1 - p) / attempts)


def test_base_cases_are_fair():
    r = RandomSource(11)
    for tau, universe in [((2, 1, 1, 0, 0), [delta2(), delta2(2, 1)]), ((2, 0, 1, 2, 0), [delta3(), delta3(2, 1)])]:
        counts = Counter(random_cyclically_reduced_graph(tau, r) for _ in range(4000))
        assert set(counts) == set(universe)
        assert chi_square_uniform(counts, universe)[1] > P_MIN
    assert random_cyclically_reduced_graph((1, 0, 0, 1, 1), r) == delta1()


@pytest.mark.parametrize("faithful", [False, True])
@pytest.mark.parametrize("branch", ["bernoulli", "integer"])
def test_small_type_uniform(faithful, branch):
    tau = (4, 1, 2, 2, 0)
    universe = list(enumerate_cyclically_reduced(4, tau))
    r = RandomSource(hash((faithful, branch)) & 0xFFFF)
    counts = Counter(random_cyclically_reduced_graph(tau, r, faithful=faithful, branch=branch) for _ in range(9600))
    assert chi_square_uniform(counts, universe)[1] > P_MIN


def test_type_and_determinism():
    table = CountTable()
    for n in range(1, 13):
        for tau in types_of_size(n):
            if not table.s(tau):
                continue
            g = random_cyclically_reduced_graph(tau, RandomSource(n), table)
            assert combinatorial_type(g) == tau
            assert is_cyclically_reduced(g) and is_connected(g)
            assert g == random_cyclically_reduced_graph(tau, RandomSource(n), table)
    with pytest.raises(EmptyTypeError):
        random_cyclically_reduced_graph((3, 1, 0, 1, 3), RandomSource(0), table)


def test_large_type_runs():
    g = random_cyclically_reduced_graph((300, 140, 40, 20, 10), RandomSource(9))
    assert combinatorial_type(g) == (300, 140, 40, 20, 10)
    assert is_connected(g)


def test_rooted_sampler():
    r = RandomSource(4)
    universe = [g for g in enumerate_reduced(2) if combinatorial_type(g) == (2, 1, 0, 0, 1)]
    assert len(universe) == 2
    counts = Counter(random_reduced_graph((2, 1, 0, 0, 1), r) for _ in range(2000))
    assert set(counts) == set(universe)
    assert chi_square_uniform(counts, universe)[1] > P_MIN
    g = random_reduced_graph((6, 3, 0, 0, 0), r)
    assert is_reduced(g) and g.root is not None
    for tau in [(1, 0, 0, 0, 0), (1, 0, 0, 1, 0), (1, 0, 0, 0, 1), (1, 0, 0, 1, 1)]:
        assert combinatorial_type(random_reduced_graph(tau, r)) == tau
    with pytest.raises(EmptyTypeError):
        random_reduced_graph((5, 2, 1, 1, 1), r)


def test_iso_sampler():
    r = RandomSource(8)
    for n, sigma in [(2, (0, 1, 0)), (3, (1, 0, 1)), (6, (0, 0, 2)), (1, (0, 0, 0))]:
        g = random_subgroup_iso(n, sigma, r)
        assert is_reduced(g) and g.size == n
        assert isomorphism_type(g) == sigma
    g = random_subgroup_iso(6, (0, 0, 2), r, cyclic=True)
    assert is_cyclically_reduced(g)
    with pytest.raises(EmptyTypeError):
        random_subgroup_iso(4, (5, 5, 5), r)


def test_relabel():
    r = RandomSource(2)
    assert random_relabel(delta1(), r) == delta1()
    counts = Counter(random_relabel(delta3(), r) for _ in range(2000))
    assert set(counts) == {delta3(), delta3(2, 1)}
    assert chi_square_uniform(counts)[1] > P_MIN
