"""Hurwitz moves and braid orbits of transposition factorizations.

The braid generator acts on adjacent entries by
``(s_i, s_i+1) -> (s_i s_i+1 s_i^-1, s_i)`` with products read left to
right, so the ordered product of a sequence is preserved.
"""
from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable, Sequence

import numpy as np

from .perm import Permutation, _compose, _inverse, relabel


class OrbitTooLarge(RuntimeError):
    """An orbit or factorization set exceeds the configured size cap."""


def hurwitz_move(perms: Sequence[Permutation], i: int) -> list[Permutation]:
    """Apply the ``i``-th braid generator to a sequence of permutations."""
    if not 0 <= i < len(perms) - 1:
        raise IndexError(f"move index {i} out of range for {len(perms)} entries")
    a, b = perms[i], perms[i + 1]
    moved = Permutation(relabel(b.images, _inverse(a.images)))
    return list(perms[:i]) + [moved, a] + list(perms[i + 2:])


def _raw_move(seq: tuple[tuple[int, ...], ...], i: int) -> tuple[tuple[int, ...], ...]:
    a, b = seq[i], seq[i + 1]
    return seq[:i] + (relabel(b, _inverse(a)), a) + seq[i + 2:]


def transpositions(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def _transposition_images(n: int, a: int, b: int) -> tuple[int, ...]:
    img = list(range(n))
    img[a], img[b] = b, a
    return tuple(img)


def count_transitive_factorizations(target: Sequence[int], length: int) -> int:
    """Number of sequences of ``length`` transpositions with product ``target``
    generating a transitive group on all ``len(target)`` sheets.

    Dynamic programme over (partial product, partition of sheets into the
    components of the transpositions used so far).
    """
    n = len(target)
    ts = [(_transposition_images(n, a, b), a, b) for a, b in transpositions(n)]
    start = (tuple(range(n)), tuple(range(n)))
    states = {start: 1}
    for _ in range(length):
        nxt: dict = {}
        for (acc, blocks), cnt in states.items():
            for img, a, b in ts:
                acc2 = _compose(acc, img)
                ba, bb = blocks[a], blocks[b]
                if ba != bb:
                    lo, hi = min(ba, bb), max(ba, bb)
                    blocks2 = tuple(lo if x == hi else x for x in blocks)
                else:
                    blocks2 = blocks
                key = (acc2, blocks2)
                nxt[key] = nxt.get(key, 0) + cnt
        states = nxt
    target = tuple(target)
    return sum(c for (acc, blocks), c in states.items()
               if acc == target and all(x == 0 for x in blocks))


def transitive_factorizations(target: Sequence[int], length: int, limit: int | None = None) -> list[tuple[int, ...]]:
    """Every transitive factorization as a tuple of transposition indices into :func:`transpositions`."""
    n = len(target)
    ts = transpositions(n)
    imgs = [_transposition_images(n, a, b) for a, b in ts]
    target = tuple(target)
    out: list[tuple[int, ...]] = []

    def transitive(word: tuple[int, ...]) -> bool:
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                x = parent[x]
            return x
        for k in word:
            a, b = ts[k]
            parent[find(a)] = find(b)
        return len({find(x) for x in range(n)}) == 1

    def rec(prefix: tuple[int, ...], acc: tuple[int, ...]) -> None:
        if len(prefix) == length:
            if acc == target and transitive(prefix):
                out.append(prefix)
                if limit is not None and len(out) > limit:
                    raise OrbitTooLarge(f"more than {limit} factorizations")
            return
        for k, img in enumerate(imgs):
            rec(prefix + (k,), _compose(acc, img))

    rec((), tuple(range(n)))
    return out


def _conj_table(n: int) -> np.ndarray:
    """``table[a, b]`` is the index of ``t_a t_b t_a`` (a transposition is its own inverse)."""
    ts = transpositions(n)
    index = {t: k for k, t in enumerate(ts)}
    table = np.zeros((len(ts), len(ts)), dtype=np.int64)
    for ka, (a0, a1) in enumerate(ts):
        swap = {a0: a1, a1: a0}
        for kb, (b0, b1) in enumerate(ts):
            c0, c1 = swap.get(b0, b0), swap.get(b1, b1)
            table[ka, kb] = index[(min(c0, c1), max(c0, c1))]
    return table


def braid_orbit_size(n: int, seed: Sequence[int], cap: int | None = None) -> int:
    """Size of the braid-group orbit of a transposition word, by vectorised BFS.

    Words are encoded as integers in base ``T = n(n-1)/2``.  The forward
    generators suffice because the orbit is finite.
    """
    T = n * (n - 1) // 2
    L = len(seed)
    if L < 2:
        return 1
    table = _conj_table(n)
    powers = T ** np.arange(L, dtype=np.int64)
    space = T ** L
    dense = space <= 1 << 28
    if dense:
        seen = np.zeros(space, dtype=bool)
    else:
        seen_sorted = np.zeros(0, dtype=np.int64)
    code = int(np.dot(np.asarray(seed, dtype=np.int64), powers))
    frontier = np.array([code], dtype=np.int64)
    if dense:
        seen[code] = True
    else:
        seen_sorted = frontier.copy()
    total = 1
    while frontier.size:
        digits = (frontier[:, None] // powers[None, :]) % T
        produced = []
        for i in range(L - 1):
            d = digits.copy()
            d[:, i] = table[digits[:, i], digits[:, i + 1]]
            d[:, i + 1] = digits[:, i]
            produced.append(d @ powers)
        cand = np.unique(np.concatenate(produced))
        if dense:
            cand = cand[~seen[cand]]
            seen[cand] = True
        else:
            cand = cand[~np.isin(cand, seen_sorted, assume_unique=True)]
            seen_sorted = np.union1d(seen_sorted, cand)
        total += cand.size
        if cap is not None and total > cap:
            raise OrbitTooLarge(f"braid orbit exceeds {cap} words")
        frontier = cand
    return total


def braid_orbits(words: Iterable[tuple[int, ...]], n: int) -> list[list[tuple[int, ...]]]:
    """Partition transposition words into braid orbits (plain BFS)."""
    table = _conj_table(n).tolist()
    remaining = set(words)
    orbits = []
    while remaining:
        start = min(remaining)
        orbit = {start}
        queue = deque([start])
        while queue:
            w = queue.popleft()
            for i in range(len(w) - 1):
                v = w[:i] + (table[w[i]][w[i + 1]], w[i]) + w[i + 2:]
                if v not in orbit:
                    orbit.add(v)
                    queue.append(v)
        remaining -= orbit
        orbits.append(sorted(orbit))
    return orbits


def word_to_images(word: Sequence[int], n: int) -> list[tuple[int, ...]]:
    ts = transpositions(n)
    return [_transposition_images(n, *ts[k]) for k in word]


def images_to_word(perms: Sequence[Sequence[int]]) -> tuple[int, ...]:
    n = len(perms[0]) if perms else 0
    index = {t: k for k, t in enumerate(transpositions(n))}
    out = []
    for p in perms:
        moved = [i for i, j in enumerate(p) if i != j]
        if len(moved) != 2:
            raise ValueError(f"{list(p)} is not a transposition")
        out.append(index[tuple(moved)])
    return tuple(out)


def centralizer(target: Sequence[int]) -> list[tuple[int, ...]]:
    """Elements ``g`` with ``g^-1 target g = target`` (brute force; small degrees only)."""
    n = len(target)
    target = tuple(target)
    return [g for g in itertools.permutations(range(n)) if relabel(target, g) == target]


def factorization_orbits(target: Sequence[int], length: int, seed: Sequence[int], *,
                         max_words: int | None = None) -> list[tuple[int, ...]]:
    """Representatives of the orbits of transitive factorizations of ``target``
    under braid moves and conjugation by the centraliser of ``target``.

    The seed (a known factorization) is closed under moves first; if its orbit
    already has as many words as there are factorizations, the set is a single
    orbit.  Otherwise every factorization is enumerated and sorted into orbits.
    """
    n = len(target)
    total = count_transitive_factorizations(target, length)
    if total == 0:
        return []
    if max_words is not None and total > max_words:
        raise OrbitTooLarge(f"{total} factorizations exceed the cap {max_words}")
    seed = tuple(seed)
    if braid_orbit_size(n, seed) == total:
        return [seed]
    words = transitive_factorizations(target, length)
    orbits = braid_orbits(words, n)
    where = {w: k for k, orb in enumerate(orbits) for w in orb}
    parent = list(range(len(orbits)))

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    for g in centralizer(target):
        for k, orb in enumerate(orbits):
            moved = images_to_word([relabel(p, g) for p in word_to_images(orb[0], n)])
            a, b = find(k), find(where[moved])
            if a != b:
                parent[max(a, b)] = min(a, b)
    reps = {}
    for k, orb in enumerate(orbits):
        reps.setdefault(find(k), orb[0])
    return [reps[r] for r in sorted(reps)]
