from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from psl2sub.core import Graph, GraphError
from psl2sub.oracle import enumerate_reduced
from psl2sub.words import is_normal, member, normalize_word, read_word

from conftest import fig_h

words = st.text(alphabet="aAbB", max_size=30)


@pytest.mark.parametrize("w, expected", [("aA", ""), ("abb", "aB"), ("abaB", "abaB"), ("bbb", ""), ("BaaB", "b"), ("", "")])
def test_normalize_examples(w, expected):
    assert normalize_word(w) == expected


def test_bad_letters():
    with pytest.raises(ValueError):
        normalize_word("abc")


@given(words)
def test_normal_form_is_idempotent(w):
    v = normalize_word(w)
    assert is_normal(v)
    assert normalize_word(v) == v


@given(words, words)
def test_rewriting_is_compatible_with_concatenation(u, v):
    assert normalize_word(u + v) == normalize_word(normalize_word(u) + normalize_word(v))


def test_member_examples():
    h = fig_h()
    assert member(h, "abaB")
    assert member(h, "babab")
    assert member(h, "")
    assert not member(h, "a")
    assert read_word(h, 1, "a") == 4
    with pytest.raises(GraphError):
        member(h.with_root(None), "a")


@given(words)
def test_member_ignores_representative(w):
    assert member(fig_h(), w) == member(fig_h(), normalize_word(w))


def _normal_words(maxlen):
    out = [""]
    for length in range(1, maxlen + 1):
        for letters in itertools.product("abB", repeat=length):
            w = "".join(letters)
            if is_normal(w):
                out.append(w)
    return out


def test_membership_closed_under_products():
    ws = _normal_words(6)
    graphs = [g for n in range(1, 4) for g in enumerate_reduced(n)]
    graphs += list(itertools.islice(enumerate_reduced(5), 0, None, 97))
    for g in graphs:
        inside = [w for w in ws if member(g, w)]
        for u in inside[:12]:
            for v in inside[:12]:
                assert member(g, u + v)
