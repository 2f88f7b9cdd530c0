import random

import pytest
from hypothesis import given, strategies as st

from hurwitz.braids import (
    OrbitTooLarge,
    braid_orbit_size,
    count_transitive_factorizations,
    factorization_orbits,
    hurwitz_move,
    images_to_word,
    transitive_factorizations,
    word_to_images,
)
from hurwitz.oracles import brute_braid_orbit, brute_factorization_count
from hurwitz.perm import Permutation, compose, product


def t(n, a, b):
    return Permutation.transposition(n, a, b)


def test_move_examples():
    assert hurwitz_move([t(2, 0, 1), t(2, 0, 1)], 0) == [t(2, 0, 1), t(2, 0, 1)]
    assert hurwitz_move([t(3, 0, 1), t(3, 1, 2)], 0) == [t(3, 0, 2), t(3, 0, 1)]
    with pytest.raises(IndexError):
        hurwitz_move([t(2, 0, 1)], 0)


@given(st.integers(0, 2**32 - 1), st.integers(2, 6), st.integers(2, 6))
def test_move_preserves_product(seed, n, k):
    rng = random.Random(seed)
    perms = []
    for _ in range(k):
        img = list(range(n))
        rng.shuffle(img)
        perms.append(Permutation(tuple(img)))
    i = rng.randrange(k - 1)
    assert product(hurwitz_move(perms, i), n) == product(perms, n)


@pytest.mark.parametrize("target,length", [
    ((0, 1), 2), ((1, 2, 0), 2), ((1, 2, 0), 4), ((0, 1, 2), 4), ((1, 0, 3, 2), 4), ((0, 1, 2, 3), 6),
])
def test_factorization_count_matches_oracle(target, length):
    assert count_transitive_factorizations(target, length) == brute_factorization_count(target, length)
    assert len(transitive_factorizations(target, length)) == brute_factorization_count(target, length)


@pytest.mark.parametrize("n,word", [
    (3, [(0, 1), (1, 2)]),
    (3, [(0, 1), (0, 1), (1, 2), (1, 2)]),
    (4, [(0, 1), (1, 2), (2, 3), (2, 3), (1, 2), (0, 1)]),
])
def test_orbit_size_matches_oracle(n, word):
    perms = [t(n, a, b).images for a, b in word]
    w = images_to_word(perms)
    assert word_to_images(w, n) == perms
    assert braid_orbit_size(n, w) == len(brute_braid_orbit(perms))


def test_orbit_cap():
    w = images_to_word([t(4, a, b).images for a, b in [(0, 1), (1, 2), (2, 3), (2, 3), (1, 2), (0, 1)]])
    with pytest.raises(OrbitTooLarge):
        braid_orbit_size(4, w, cap=10)


def test_three_cycle_single_orbit():
    seed = images_to_word([t(3, 0, 1).images, t(3, 1, 2).images])
    target = compose(t(3, 0, 1), t(3, 1, 2)).images
    assert factorization_orbits(target, 2, seed) == [seed]
    orbit = brute_braid_orbit([t(3, 0, 1).images, t(3, 1, 2).images])
    assert {tuple(map(tuple, o)) for o in orbit} == {
        (t(3, 0, 1).images, t(3, 1, 2).images),
        (t(3, 0, 2).images, t(3, 0, 1).images),
        (t(3, 1, 2).images, t(3, 0, 2).images),
    }
