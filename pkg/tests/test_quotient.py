from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from conftest import elements, preserving
from mcm.congruence import sigma_equiv
from mcm.element import compose, mk_gamma, mk_identity, mk_swap, mk_upsilon, power
from mcm.quotient import (
    UNIT,
    FreeWord,
    SemidirectElement,
    auto_f,
    h_sigma,
    iota_map,
    preimage,
    semidirect_mul,
    word_mul,
    word_product,
)

W = mk_swap()

exps = st.lists(st.tuples(st.integers(1, 6), st.integers(1, 3)), max_size=4)
words = st.builds(FreeWord, exps, exps)
semis = st.builds(SemidirectElement, words, st.integers(0, 1))


def test_word_mul_examples():
    a1 = FreeWord(a=((1, 1),))
    assert word_mul(a1, FreeWord(a=((1, 2),))) == FreeWord(a=((1, 3),))
    u = FreeWord(((2, 1),), ((1, 4),))
    assert word_mul(UNIT, u) == u
    assert word_mul(FreeWord(((1, 1),), ((2, 1),)), FreeWord(a=((3, 1),))) == FreeWord(
        ((1, 1), (3, 1)), ((2, 1),)
    )


def test_free_word_canonical_storage():
    w = FreeWord({3: 1, 1: 0, 2: 2}, [(1, 1), (1, 1)])
    assert w.a == ((2, 2), (3, 1)) and w.b == ((1, 2),)
    with pytest.raises(ValueError):
        FreeWord(a=((0, 1),))
    assert str(w) == "a2^2 a3 b1^2"


def test_auto_f_examples():
    u = FreeWord(((1, 1), (2, 2)), ((1, 3),))
    assert auto_f(u) == FreeWord(((1, 3),), ((1, 1), (2, 2)))
    assert auto_f(UNIT) == UNIT


def test_semidirect_examples():
    a1 = FreeWord(a=((1, 1),))
    assert semidirect_mul(SemidirectElement(UNIT, 1), SemidirectElement(a1, 0)) == SemidirectElement(
        FreeWord(b=((1, 1),)), 1
    )
    assert SemidirectElement(UNIT, 1) * SemidirectElement(UNIT, 1) == SemidirectElement(UNIT, 0)


def test_json_schema():
    w = FreeWord(((1, 2),), ((3, 1),))
    assert w.to_json() == {"a": [[1, 2]], "b": [[3, 1]]}
    assert FreeWord.from_json(w.to_json()) == w
    s = SemidirectElement(w, 1)
    assert s.to_json() == {"a": [[1, 2]], "b": [[3, 1]], "g": 1}
    assert SemidirectElement.from_json(s.to_json()) == s
    with pytest.raises(ValueError):
        FreeWord.from_json({"a": [[1, 0]], "b": []})


@given(words, words, words)
def test_word_monoid_laws(u, v, w):
    assert word_mul(word_mul(u, v), w) == word_mul(u, word_mul(v, w))
    assert word_mul(u, v) == word_mul(v, u)
    assert word_mul(u, UNIT) == u


@given(words, words)
def test_auto_f_is_an_involutive_automorphism(u, v):
    assert auto_f(word_mul(u, v)) == word_mul(auto_f(u), auto_f(v))
    assert auto_f(auto_f(u)) == u


@given(semis, semis, semis)
def test_semidirect_laws(x, y, z):
    assert (x * y) * z == x * (y * z)
    unit = SemidirectElement(UNIT, 0)
    assert unit * x == x == x * unit


def test_h_sigma_examples():
    assert h_sigma(mk_gamma(2)) == FreeWord(a=((2, 1),))
    assert h_sigma(power(mk_upsilon(1), 3)) == FreeWord(b=((1, 3),))
    assert h_sigma(mk_identity()) == UNIT
    with pytest.raises(ValueError):
        h_sigma(W)


def test_iota_examples():
    assert iota_map(W) == SemidirectElement(UNIT, 1)
    assert iota_map(mk_identity()) == SemidirectElement(UNIT, 0)
    assert iota_map(compose(mk_gamma(1), W)) == SemidirectElement(FreeWord(a=((1, 1),)), 1)


@given(preserving(), preserving())
def test_h_sigma_homomorphism_and_separation(a, b):
    assert h_sigma(compose(a, b)) == word_mul(h_sigma(a), h_sigma(b))
    assert (h_sigma(a) == h_sigma(b)) == sigma_equiv(a, b)


@given(elements(), elements())
def test_iota_homomorphism(a, b):
    assert iota_map(compose(a, b)) == semidirect_mul(iota_map(a), iota_map(b))


@given(semis)
def test_preimage(x):
    assert iota_map(preimage(x)) == x


def test_swap_conjugation_identities_small():
    rng = random.Random(3)
    for _ in range(30):
        ks = rng.sample(range(1, 5), rng.randint(1, 3))
        ps = [rng.randint(1, 3) for _ in ks]
        word = FreeWord(tuple(zip(ks, ps)))
        gam = word_product(word)
        ups = word_product(auto_f(word))
        assert W * gam * W == ups
        assert W * ups * W == gam
        assert gam * W == W * ups
