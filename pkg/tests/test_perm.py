import itertools

import pytest
from hypothesis import given, strategies as st

from hurwitz.oracles import brute_canonical_cycles
from hurwitz.perm import (
    DegreeMismatch,
    Permutation,
    PermTuple,
    canonical_form,
    compose,
    cycles,
    inverse,
    is_transitive,
    orbits,
    product,
)


def P(*images):
    return Permutation(tuple(images))


def perms(n):
    return st.permutations(list(range(n))).map(lambda xs: Permutation(tuple(xs)))


@st.composite
def tuples(draw, max_n=4, max_len=3):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(0, max_len))
    return PermTuple(n, tuple(draw(perms(n)) for _ in range(k)))


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        P(0, 0, 1)


def test_tuple_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        PermTuple(3, (P(1, 0),))


def test_compose_identity():
    p = P(2, 0, 1)
    assert compose(Permutation.identity(3), p) == p


def test_compose_left_to_right():
    a = Permutation.transposition(3, 0, 1)
    b = Permutation.transposition(3, 0, 2)
    assert compose(a, b) == Permutation.from_cycles(3, [(0, 1, 2)])


@given(perms(5))
def test_inverse_law(p):
    assert compose(p, inverse(p)).is_identity()
    assert compose(inverse(p), p).is_identity()


@given(perms(4), perms(4), perms(4))
def test_associative(a, b, c):
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_cycles_examples():
    assert cycles(Permutation.identity(3)) == [(0,), (1,), (2,)]
    assert cycles(Permutation.from_cycles(5, [(0, 1), (2, 3, 4)])) == [(0, 1), (2, 3, 4)]
    assert cycles(Permutation.from_cycles(3, [(0, 2, 1)])) == [(0, 2, 1)]


@given(perms(6))
def test_cycles_reconstruct(p):
    assert Permutation.from_cycles(p.n, cycles(p)) == p
    assert sum(len(c) for c in cycles(p)) == p.n


def test_orbits_examples():
    t01 = Permutation.transposition(3, 0, 1)
    t12 = Permutation.transposition(3, 1, 2)
    assert orbits([t01], 3) == [frozenset({0, 1}), frozenset({2})]
    assert orbits([], 2) == [frozenset({0}), frozenset({1})]
    assert orbits([t01, t12], 3) == [frozenset({0, 1, 2})]
    assert is_transitive([t01, t12], 3)


def test_canonical_examples():
    t01 = Permutation.transposition(3, 0, 1)
    t12 = Permutation.transposition(3, 1, 2)
    assert canonical_form(PermTuple(3, (t01,))).perms == (t01,)
    assert canonical_form(PermTuple(3, (t12,))).perms == (t01,)
    ident = Permutation.identity(2)
    assert canonical_form(PermTuple(2, (ident, ident))).perms == (ident, ident)


@given(tuples(), st.data())
def test_canonical_is_class_invariant(t, data):
    g = data.draw(perms(t.n))
    assert canonical_form(t.conjugate_by(g)) == canonical_form(t)


@given(tuples())
def test_canonical_matches_oracle(t):
    want = brute_canonical_cycles([p.images for p in t.perms], t.n)
    assert tuple(p.images for p in canonical_form(t).perms) == tuple(want)


@given(tuples())
def test_canonical_idempotent_and_conjugate(t):
    c = canonical_form(t)
    assert canonical_form(c) == c
    assert any(t.conjugate_by(Permutation(g)) == c for g in itertools.permutations(range(t.n)))


@given(tuples())
def test_product_conjugates(t):
    g = Permutation(tuple(reversed(range(t.n))))
    assert product(t.conjugate_by(g).perms, t.n) == product(t.perms, t.n).conjugate_by(g)
