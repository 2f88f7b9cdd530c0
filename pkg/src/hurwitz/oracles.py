"""Slow, direct computations used to cross-check the library.

Nothing here reuses the library's search or canonicalisation code: tuples
are enumerated in full and classes are identified by minimising over every
relabelling in Sym(n).
"""
from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction
from typing import Sequence

import sympy

from .polyalg import RationalMapClass


def _apply(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Left-to-right product: ``p`` first."""
    return tuple(q[p[i]] for i in range(len(p)))


def _conj(p: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[g[i]] = g[j]
    return tuple(out)


def _cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    seen, out = set(), []
    for s in range(len(p)):
        if s not in seen:
            c = [s]
            seen.add(s)
            while p[c[-1]] != s:
                c.append(p[c[-1]])
                seen.add(c[-1])
            out.append(tuple(c))
    return out


def _ct(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in _cycles(p)), reverse=True))


def _transitive(perms: Sequence[Sequence[int]], n: int) -> bool:
    reached, frontier = {0}, [0]
    while frontier:
        s = frontier.pop()
        for p in perms:
            for t in (p[s], p.index(s)):
                if t not in reached:
                    reached.add(t)
                    frontier.append(t)
    return len(reached) == n


def brute_canonical_key(perms: Sequence[Sequence[int]], n: int) -> tuple:
    """Least image-array tuple over all simultaneous conjugates (a different order than the library's)."""
    return min(tuple(_conj(p, g) for p in perms) for g in itertools.permutations(range(n)))


def brute_canonical_cycles(perms: Sequence[Sequence[int]], n: int) -> tuple:
    """Least conjugate under the cycle-notation order used by the library's canonical form."""
    def key(p: Sequence[int]) -> tuple:
        return tuple(c[c.index(min(c)):] + c[:c.index(min(c))] for c in _cycles(p) if len(c) > 1)
    best = None
    for g in itertools.permutations(range(n)):
        conj = tuple(_conj(p, g) for p in perms)
        k = tuple(key(p) for p in conj)
        if best is None or k < best[0]:
            best = (k, conj)
    return best[1]


def brute_coverings(n: int, cycle_types: Sequence[Sequence[int]]) -> tuple[int, int]:
    """(number of classes, number of labelled tuples) by full enumeration."""
    types = [tuple(sorted(list(t) + [1] * (n - sum(t)), reverse=True)) for t in cycle_types]
    perms = list(itertools.permutations(range(n)))
    classes, count = set(), 0
    ident = tuple(range(n))
    for tup in itertools.product(*[[p for p in perms if _ct(p) == t] for t in types]):
        acc = ident
        for p in tup:
            acc = _apply(acc, p)
        if acc == ident and _transitive(tup, n):
            count += 1
            classes.add(brute_canonical_key(tup, n))
    return len(classes), count


def brute_factorization_count(target: Sequence[int], length: int) -> int:
    n = len(target)
    ts = []
    for a, b in itertools.combinations(range(n), 2):
        t = list(range(n))
        t[a], t[b] = b, a
        ts.append(tuple(t))
    count = 0
    for word in itertools.product(ts, repeat=length):
        acc = tuple(range(n))
        for t in word:
            acc = _apply(acc, t)
        if acc == tuple(target) and _transitive(word, n):
            count += 1
    return count


def brute_braid_orbit(word: Sequence[Sequence[int]]) -> set[tuple]:
    """Closure of a sequence of permutations under both braid generators and their inverses."""
    start = tuple(tuple(p) for p in word)
    seen, queue = {start}, deque([start])
    while queue:
        cur = queue.popleft()
        for i in range(len(cur) - 1):
            a, b = cur[i], cur[i + 1]
            a_inv = tuple(a.index(s) for s in range(len(a)))
            fwd = cur[:i] + (_apply(_apply(a, b), a_inv), a) + cur[i + 2:]
            b_inv = tuple(b.index(s) for s in range(len(b)))
            bwd = cur[:i] + (b, _apply(_apply(b_inv, a), b)) + cur[i + 2:]
            for nxt in (fwd, bwd):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return seen


# -- fibre data --------------------------------------------------------------------


def _set_partitions(items: list) -> list[list[list]]:
    """Set partitions via restricted growth strings."""
    out = []
    k = len(items)
    for rgs in itertools.product(range(k), repeat=k):
        if rgs and rgs[0] != 0:
            continue
        if any(rgs[i] > max(rgs[:i]) + 1 for i in range(1, k)):
            continue
        blocks: dict[int, list] = {}
        for item, b in zip(items, rgs):
            blocks.setdefault(b, []).append(item)
        out.append(list(blocks.values()))
    return out


def brute_fiber_data(n: int, mult: int) -> list[tuple[tuple[int, ...], tuple]]:
    """Every (monodromy, singular points) of multiplicity ``mult``.

    Points are frozensets of cycles with a genus; a single moving cycle of
    genus 0 is the ordinary (ungrouped) case and is left out of the points.
    """
    out = []
    for p in itertools.permutations(range(n)):
        cycs = _cycles(p)
        for part in _set_partitions(cycs):
            for genera in itertools.product(range(mult + 1), repeat=len(part)):
                pts, total, valid = [], 0, True
                for blk, g in zip(part, genera):
                    m, deg = len(blk), sum(len(c) for c in blk)
                    if m == 1 and g == 0:
                        total += deg - 1
                        continue
                    if m == 1 and deg == 1:
                        valid = False
                        break
                    total += 2 * g + m - 1 + deg - 1
                    pts.append((frozenset(blk), g))
                if valid and total == mult:
                    out.append((p, frozenset(pts)))
    return out


def _connected(n: int, fibers) -> bool:
    """Bipartite graph of orbits of the whole monodromy group and singular points."""
    perms = [p for p, _ in fibers]
    orbit_of = {}
    for s in range(n):
        if s in orbit_of:
            continue
        reached, frontier = {s}, [s]
        while frontier:
            x = frontier.pop()
            for p in perms:
                for y in (p[x], p.index(x)):
                    if y not in reached:
                        reached.add(y)
                        frontier.append(y)
        for x in reached:
            orbit_of[x] = s
    nodes = {("o", o) for o in orbit_of.values()}
    edges: dict = {v: set() for v in nodes}
    for i, (_, pts) in enumerate(fibers):
        for j, (blk, _) in enumerate(pts):
            v = ("g", i, j)
            edges[v] = set()
            for c in blk:
                o = ("o", orbit_of[c[0]])
                edges[v].add(o)
                edges[o].add(v)
    start = next(iter(edges))
    seen, frontier = {start}, [start]
    while frontier:
        v = frontier.pop()
        for w in edges[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return len(seen) == len(edges)


def _relabel_fiber(fiber, g) -> tuple:
    p, pts = fiber
    norm = tuple(sorted((tuple(sorted(tuple(sorted(g[s] for s in c)) for c in blk)), gen) for blk, gen in pts))
    return (_conj(p, g), norm)


def brute_ll_fiber_count(mults: Sequence[int], n: int) -> int:
    """Number of classes of boundary data with the given multiplicities, by exhaustive enumeration."""
    if not mults:
        return 1 if n == 1 else 0
    data = [brute_fiber_data(n, m) for m in mults]
    ident = tuple(range(n))
    classes = set()
    relabelings = list(itertools.permutations(range(n)))
    for tup in itertools.product(*data):
        acc = ident
        for p, _ in tup:
            acc = _apply(acc, p)
        if acc != ident or not _connected(n, tup):
            continue
        key = min(tuple(_relabel_fiber(f, g) for f in tup) for g in relabelings)
        classes.add(key)
    return len(classes)


# -- polynomials ----------------------------------------------------------------------


def sympy_ll(m: RationalMapClass) -> list:
    """Coefficients (ascending in ``t``) of ``disc_z(t Q(z) - P(z))`` computed by sympy."""
    z, t = sympy.symbols("z t")

    def sym(c):
        return sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)

    P = sum(sym(c) * z ** i for i, c in enumerate(m.P.coeffs))
    Q = sum(sym(c) * z ** i for i, c in enumerate(m.Q.coeffs))
    disc = sympy.Poly(sympy.discriminant(sympy.expand(t * Q - P), z), t)
    return [sympy.nsimplify(c) for c in reversed(disc.all_coeffs())]


def sympy_coeff_to_fraction(c) -> tuple[Fraction, Fraction]:
    re, im = sympy.re(c), sympy.im(c)
    return Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q))
