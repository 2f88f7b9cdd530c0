"""Permutations of sheets and tuples of them up to simultaneous conjugation.

Sheets are labelled ``0..n-1``.  Products are read left to right:
``compose(a, b)`` applies ``a`` first and then ``b``.  This is the order in
which loops are concatenated when they act on the fibre of a covering, so a
monodromy tuple whose loops multiply to the trivial loop has product
``compose(*tuple) == identity``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class DegreeMismatch(ValueError):
    """Two permutations act on different numbers of sheets."""


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0, ..., n-1}`` stored as its image array."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {list(images)}")
        object.__setattr__(self, "images", images)

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Build from cycle notation, e.g. ``from_cycles(4, [(0, 1), (2, 3)])``."""
        images = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            for k, a in enumerate(cyc):
                if a in seen or not 0 <= a < n:
                    raise ValueError(f"bad cycle {tuple(cyc)} for degree {n}")
                seen.add(a)
                images[a] = cyc[(k + 1) % len(cyc)]
        return cls(tuple(images))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> Permutation:
        if a == b:
            raise ValueError("a transposition needs two distinct sheets")
        return cls.from_cycles(n, [(a, b)])

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __len__(self) -> int:
        return self.n

    def inverse(self) -> Permutation:
        return Permutation(_inverse(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        return cycles(self)

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths in decreasing order, fixed points included."""
        return tuple(sorted((len(c) for c in _cycles(self.images)), reverse=True))

    @property
    def num_cycles(self) -> int:
        return len(_cycles(self.images))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def is_transposition(self) -> bool:
        return sum(1 for i, j in enumerate(self.images) if i != j) == 2

    def support(self) -> frozenset[int]:
        return frozenset(i for i, j in enumerate(self.images) if i != j)

    def conjugate_by(self, g: Permutation) -> Permutation:
        """Return ``g^-1 self g``, i.e. the same permutation with sheet ``s`` renamed ``g(s)``."""
        if g.n != self.n:
            raise DegreeMismatch(f"degrees {self.n} and {g.n}")
        return Permutation(relabel(self.images, g.images))

    def __str__(self) -> str:
        nontrivial = [c for c in _cycles(self.images) if len(c) > 1]
        if not nontrivial:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in nontrivial)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


@dataclass(frozen=True)
class PermTuple:
    """An ordered tuple of permutations of common degree ``n``."""

    n: int
    perms: tuple[Permutation, ...] = ()

    def __post_init__(self) -> None:
        perms = tuple(self.perms)
        for p in perms:
            if p.n != self.n:
                raise DegreeMismatch(f"entry {p} has degree {p.n}, expected {self.n}")
        object.__setattr__(self, "perms", perms)

    @classmethod
    def of(cls, n: int, perms: Iterable[Permutation | Sequence[int]]) -> PermTuple:
        return cls(n, tuple(p if isinstance(p, Permutation) else Permutation(tuple(p)) for p in perms))

    def __len__(self) -> int:
        return len(self.perms)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.perms)

    def __getitem__(self, i: int) -> Permutation:
        return self.perms[i]

    def product(self) -> Permutation:
        return product(self.perms, self.n)

    def conjugate_by(self, g: Permutation) -> PermTuple:
        return PermTuple(self.n, tuple(p.conjugate_by(g) for p in self.perms))


# -- raw image-tuple helpers (hot loops avoid the dataclass) ---------------


def _compose(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(b[x] for x in a)


def _inverse(a: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


def _cycles(a: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(a)
    out = []
    for start in range(len(a)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = a[x]
        out.append(tuple(cyc))
    return out


def relabel(images: Sequence[int], label: Sequence[int]) -> tuple[int, ...]:
    """Images of the permutation after renaming sheet ``s`` to ``label[s]``."""
    out = [0] * len(images)
    for s, t in enumerate(images):
        out[label[s]] = label[t]
    return tuple(out)


def cycle_key(images: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Nontrivial cycles in normal form; the order used by :func:`canonical_form`."""
    return tuple(c for c in _cycles(images) if len(c) > 1)


# -- public operations -------------------------------------------------------


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Apply ``a`` first, then ``b``."""
    if a.n != b.n:
        raise DegreeMismatch(f"cannot compose degrees {a.n} and {b.n}")
    return Permutation(_compose(a.images, b.images))


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def product(perms: Iterable[Permutation], n: int) -> Permutation:
    """Left-to-right product of ``perms``; the identity of degree ``n`` when empty."""
    acc = tuple(range(n))
    for p in perms:
        if p.n != n:
            raise DegreeMismatch(f"entry {p} has degree {p.n}, expected {n}")
        acc = _compose(acc, p.images)
    return Permutation(acc)


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Cycles sorted by minimal element, each starting at its minimum; fixed points included."""
    return _cycles(p.images)


def orbits(generators: PermTuple | Sequence[Permutation], n: int | None = None) -> list[frozenset[int]]:
    """Orbits of the group generated by ``generators``, sorted by minimal element."""
    if isinstance(generators, PermTuple):
        n = generators.n
        gens = generators.perms
    else:
        gens = tuple(generators)
        if n is None:
            if not gens:
                raise ValueError("degree required for an empty generator list")
            n = gens[0].n
    return raw_orbits([g.images for g in gens], n)


def raw_orbits(gens: Iterable[Sequence[int]], n: int) -> list[frozenset[int]]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i, j in enumerate(g):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    blocks: dict[int, set[int]] = {}
    for i in range(n):
        blocks.setdefault(find(i), set()).add(i)
    return [frozenset(blocks[r]) for r in sorted(blocks)]


def is_transitive(perms: Sequence[Permutation], n: int) -> bool:
    return len(raw_orbits([p.images for p in perms], n)) <= 1


def _optimal_labelings(images: Sequence[int]) -> list[tuple[int, ...]]:
    """All relabelings of one permutation that minimise its :func:`cycle_key`.

    The minimum puts nontrivial cycles first, shortest first, on consecutive
    labels; fixed points take the largest labels.  The labelings realising it
    form a coset of the centraliser.
    """
    n = len(images)
    cycs = _cycles(images)
    moving = sorted((c for c in cycs if len(c) > 1), key=len)
    fixed = [c[0] for c in cycs if len(c) == 1]
    by_len: dict[int, list[tuple[int, ...]]] = {}
    for c in moving:
        by_len.setdefault(len(c), []).append(c)
    lengths = sorted(by_len)

    def cycle_choices() -> Iterator[list[tuple[int, ...]]]:
        per_len = []
        for ln in lengths:
            group = by_len[ln]
            options = []
            for order in itertools.permutations(group):
                for rots in itertools.product(range(ln), repeat=len(order)):
                    options.append([c[r:] + c[:r] for c, r in zip(order, rots)])
            per_len.append(options)
        for combo in itertools.product(*per_len):
            yield [c for block in combo for c in block]

    out = []
    base = len(images) - len(fixed)
    for arranged in cycle_choices():
        label = [0] * n
        k = 0
        for c in arranged:
            for s in c:
                label[s] = k
                k += 1
        for order in itertools.permutations(fixed):
            lab = label[:]
            for i, s in enumerate(order):
                lab[s] = base + i
            out.append(tuple(lab))
    return out


def canonical_labelings(perm_images: Sequence[Sequence[int]], n: int) -> tuple[tuple[tuple[int, ...], ...], list[tuple[int, ...]]]:
    """Lexicographically least conjugate of a tuple, with every labeling attaining it.

    Tuples are compared entry by entry through :func:`cycle_key`.  Returns the
    canonical image tuples and the list of labelings ``label`` (old sheet ->
    new sheet) that produce them.
    """
    candidates: list[tuple[int, ...]] | None = None
    for images in perm_images:
        if candidates is None:
            if all(i == j for i, j in enumerate(images)):
                continue
            candidates = _optimal_labelings(images)
            continue
        best = None
        kept: list[tuple[int, ...]] = []
        for lab in candidates:
            key = cycle_key(relabel(images, lab))
            if best is None or key < best:
                best, kept = key, [lab]
            elif key == best:
                kept.append(lab)
        candidates = kept
    if candidates is None:
        candidates = list(itertools.permutations(range(n)))
    lab = candidates[0]
    canon = tuple(relabel(images, lab) for images in perm_images)
    return canon, candidates


def canonical_form(t: PermTuple) -> PermTuple:
    """Least tuple among all simultaneous conjugates ``g^-1 t g``.

    Two tuples are simultaneously conjugate exactly when their canonical forms
    agree.
    """
    canon, _ = canonical_labelings([p.images for p in t.perms], t.n)
    return PermTuple(t.n, tuple(Permutation(c) for c in canon))


def all_permutations(n: int) -> Iterator[Permutation]:
    for images in itertools.permutations(range(n)):
        yield Permutation(images)


def permutations_of_type(n: int, cycle_type: Sequence[int]) -> list[tuple[int, ...]]:
    """Image tuples of every permutation of degree ``n`` with the given cycle type."""
    target = tuple(sorted(cycle_type, reverse=True))
    if sum(target) != n:
        raise ValueError(f"cycle type {list(cycle_type)} is not a partition of {n}")
    return [p for p in itertools.permutations(range(n))
            if tuple(sorted(map(len, _cycles(p)), reverse=True)) == target]
