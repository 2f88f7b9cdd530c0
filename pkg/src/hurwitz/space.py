"""The LL map on degenerate coverings, its finite fibres, and decorated classes.

``ll`` sends a (possibly degenerate) covering to its branch divisor.  A
decorated class is a simple covering whose branch points are grouped into
disks, considered up to braid moves inside each disk and simultaneous
conjugation; ``nu`` and ``nu_inverse`` translate between the two models.
"""
from __future__ import annotations

import enum
import functools
import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from sympy.utilities.iterables import multiset_partitions

from . import config
from .boundary import (
    BoundaryClass,
    CriticalFiberDatum,
    SingularPointDatum,
    _components,
    merge_fibers,
    perturb_all,
    simple_factorization,
)
from .braids import OrbitTooLarge, factorization_orbits, hurwitz_move, images_to_word, word_to_images
from .covering import Position
from .perm import (
    Permutation,
    _compose,
    _cycles,
    _inverse,
    canonical_labelings,
    relabel,
)

__all__ = [
    "BranchDivisor", "DiskGrouping", "Block", "DecoratedClass", "Verdict", "PartitionReport",
    "ll", "ll_fiber", "hurwitz_move", "ve_equivalent", "perturbation_set", "nu", "nu_inverse",
    "q", "verify_partition", "decorated_classes", "fiber_data", "admissible_divisors", "simple_refinement",
]


def _pos_key(p: Position) -> tuple:
    return (0, p) if isinstance(p, str) else (1, repr(p))


@dataclass(frozen=True)
class BranchDivisor:
    """Critical values with multiplicities, in loop order."""

    entries: tuple[tuple[Position, int], ...]

    def __post_init__(self) -> None:
        entries = tuple((p, int(k)) for p, k in self.entries)
        if any(k < 1 for _, k in entries):
            raise ValueError("multiplicities must be positive")
        positions = [p for p, _ in entries]
        if len(set(positions)) != len(positions):
            raise ValueError(f"repeated positions in divisor {positions}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, items: Iterable[tuple[Position, int]] | dict) -> BranchDivisor:
        if isinstance(items, dict):
            items = items.items()
        return cls(tuple(items))

    @property
    def total(self) -> int:
        return sum(k for _, k in self.entries)

    @property
    def positions(self) -> tuple[Position, ...]:
        return tuple(p for p, _ in self.entries)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(k for _, k in self.entries)

    def as_multiset(self) -> Counter:
        return Counter(dict(self.entries))

    def same_points(self, other: BranchDivisor) -> bool:
        """Equality as a multiset, ignoring order."""
        return sorted(self.entries, key=lambda e: _pos_key(e[0])) == sorted(other.entries, key=lambda e: _pos_key(e[0]))


def ll(b: BoundaryClass) -> BranchDivisor:
    return BranchDivisor(tuple((f.position, f.multiplicity) for f in b.fibers))


# -- fibre data -----------------------------------------------------------------


RawFiber = tuple[tuple[int, ...], tuple[SingularPointDatum, ...]]


def _groupings(images: tuple[int, ...], mult: int) -> Iterator[tuple[SingularPointDatum, ...]]:
    """Every grouping of the cycles of ``images`` into points, with genera, of total multiplicity ``mult``."""
    cycs = _cycles(images)
    for partition in multiset_partitions(list(range(len(cycs)))):
        blocks = [tuple(cycs[i] for i in block) for block in partition]
        base = []
        for blk in blocks:
            deg = sum(len(c) for c in blk)
            if len(blk) == 1:
                base.append(deg - 1)
            else:
                base.append(len(blk) - 1 + deg - 1)
        spare = mult - sum(base)
        if spare < 0 or spare % 2:
            continue
        # genus options: a single cycle may stay ungrouped (g = 0) or carry g >= 1 if it moves
        open_slots = [k for k, blk in enumerate(blocks) if len(blk) > 1 or len(blk[0]) > 1]
        for genera in _distribute(spare // 2, len(open_slots)):
            pts = []
            for k, blk in enumerate(blocks):
                g = genera[open_slots.index(k)] if k in open_slots else 0
                if len(blk) == 1 and g == 0:
                    continue
                pts.append(SingularPointDatum(blk, g))
            yield tuple(sorted(pts, key=lambda p: min(p.sheets)))


def _distribute(total: int, slots: int) -> Iterator[tuple[int, ...]]:
    if slots == 0:
        if total == 0:
            yield ()
        return
    if slots == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _distribute(total - first, slots - 1):
            yield (first,) + rest


@functools.lru_cache(maxsize=None)
def fiber_data(n: int, mult: int) -> tuple[RawFiber, ...]:
    """Every critical fibre (monodromy and singular points) of degree ``n`` and multiplicity ``mult``."""
    out = []
    for images in itertools.permutations(range(n)):
        for pts in _groupings(images, mult):
            out.append((images, pts))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _groupings_of(images: tuple[int, ...], mult: int) -> tuple[tuple[SingularPointDatum, ...], ...]:
    return tuple(_groupings(images, mult))


def _raw_connected(n: int, fibers: Sequence[RawFiber]) -> bool:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for images, pts in fibers:
        for i, j in enumerate(images):
            parent[find(i)] = find(j)
        for p in pts:
            first = min(p.sheets)
            for s in p.sheets:
                parent[find(s)] = find(first)
    root = find(0)
    return all(find(x) == root for x in range(n))


def _cycle_type(images: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in _cycles(images)), reverse=True))


def ll_fiber(d: BranchDivisor, n: int, chi: int, *, bound: int | None = None) -> list[BoundaryClass]:
    """All boundary classes of degree ``n`` with branch divisor ``d``, canonical and sorted.

    The first fibre is fixed up to conjugacy, the last monodromy is forced by
    the product condition, and the result is deduplicated by canonical form.
    """
    config.check_degree(n, bound)
    if d.total != 2 * n - chi:
        raise ValueError(f"divisor of total {d.total} does not match 2n - chi = {2 * n - chi}")
    k = len(d.entries)
    if k == 0:
        return [BoundaryClass(n, ())] if n == 1 else []
    mults = d.multiplicities
    seen: set[BoundaryClass] = set()
    ident = tuple(range(n))

    def finish(prefix: list[RawFiber], last_images: tuple[int, ...]) -> None:
        for pts in _groupings_of(last_images, mults[-1]):
            fibers = prefix + [(last_images, pts)]
            if not _raw_connected(n, fibers):
                continue
            b = BoundaryClass(n, tuple(CriticalFiberDatum(pos, Permutation(img), p)
                                       for pos, (img, p) in zip(d.positions, fibers)))
            seen.add(b.canonical())

    if k == 1:
        finish([], ident)
    else:
        reps: dict[tuple[int, ...], tuple[int, ...]] = {}
        for images, _ in fiber_data(n, mults[0]):
            reps.setdefault(_cycle_type(images), images)
        firsts = [fd for fd in fiber_data(n, mults[0]) if reps[_cycle_type(fd[0])] == fd[0]]
        middles = [fiber_data(n, m) for m in mults[1:-1]]
        for first in firsts:
            for middle in itertools.product(*middles):
                acc = first[0]
                for img, _ in middle:
                    acc = _compose(acc, img)
                finish([first, *middle], _inverse(acc))
    return sorted(seen, key=lambda b: b.key())


def is_admissible(n: int, chi: int, k: int) -> bool:
    """Whether degree ``n``, Euler characteristic ``chi`` and total ``k`` can occur together."""
    return n >= 1 and k == 2 * n - chi and chi <= 2 and chi % 2 == 0 and not (n == 1 and k > 0)


def admissible_divisors(n: int, k_max: int, *, compositions: bool = True) -> Iterator[tuple[BranchDivisor, int]]:
    """Divisors with labelled positions ``a, b, ...`` of every admissible total ``k = 2n - chi <= k_max``.

    Totals run over even ``chi <= 2``; a degree-one covering is only the sphere
    with no critical values.  Yields ``(divisor, chi)``.
    """
    for k in range(0, k_max + 1):
        chi = 2 * n - k
        if not is_admissible(n, chi, k):
            continue
        parts = _compositions(k) if compositions else _partitions(k)
        for parts_ in parts:
            labels = [chr(ord("a") + i) for i in range(len(parts_))]
            yield BranchDivisor(tuple(zip(labels, parts_))), chi


def _compositions(k: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    for first in range(1, k + 1):
        for rest in _compositions(k - first):
            yield (first,) + rest


def _partitions(k: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


# -- decorated classes ------------------------------------------------------------


class Verdict(enum.Enum):
    EQUIVALENT = "equivalent"
    INEQUIVALENT = "inequivalent"
    UNDECIDED = "undecided"

    def __bool__(self) -> bool:
        return self is Verdict.EQUIVALENT


@dataclass(frozen=True)
class DiskGrouping:
    """Contiguous groups of fibre indices; a label marks a disk with a centre ``e``."""

    groups: tuple[tuple[int, ...], ...]
    labels: tuple[Position | None, ...]

    def __post_init__(self) -> None:
        groups = tuple(tuple(g) for g in self.groups)
        flat = [i for g in groups for i in g]
        if flat != list(range(len(flat))):
            raise ValueError(f"groups {groups} are not contiguous blocks of 0..{len(flat) - 1}")
        labels = tuple(self.labels)
        if len(labels) != len(groups):
            raise ValueError("one label (or None) per group")
        for g, lab in zip(groups, labels):
            if lab is not None and len(g) < 2:
                raise ValueError(f"disk {lab} must contain at least two critical values")
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def single(cls, k: int, label: Position = "e") -> DiskGrouping:
        return cls((tuple(range(k)),), (label if k >= 2 else None,))


@dataclass(frozen=True)
class Block:
    """Simple critical values in one disk (``decorated``) or a lone undecorated value."""

    label: Position
    decorated: bool
    transpositions: tuple[Permutation, ...]

    def __post_init__(self) -> None:
        ts = tuple(self.transpositions)
        object.__setattr__(self, "transpositions", ts)
        for t in ts:
            if not t.is_transposition():
                raise ValueError(f"{t} is not a transposition")
        if self.decorated and len(ts) < 2:
            raise ValueError(f"disk {self.label} must contain at least two critical values")
        if not self.decorated and len(ts) != 1:
            raise ValueError("an undecorated block holds exactly one simple value")


def _movable(sizes: Sequence[int], decorated: Sequence[bool]) -> list[int]:
    out, start = [], 0
    for size, dec in zip(sizes, decorated):
        if dec:
            out += list(range(start, start + size - 1))
        start += size
    return out


def orbit_forms(n: int, perms: Sequence[Sequence[int]], movable: Sequence[int], cap: int | None = None) -> set:
    """Canonical forms in the orbit of ``perms`` under the allowed moves and conjugation.

    Breadth-first search on canonical forms; raises :class:`OrbitTooLarge`
    once more than ``cap`` distinct forms have been seen.
    """
    cap = config.DEFAULT_MAX_ORBIT if cap is None else cap
    start, _ = canonical_labelings(perms, n)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for i in movable:
            a, b = cur[i], cur[i + 1]
            nxt = cur[:i] + (relabel(b, _inverse(a)), a) + cur[i + 2:]
            canon, _ = canonical_labelings(nxt, n)
            if canon not in seen:
                seen.add(canon)
                if len(seen) > cap:
                    raise OrbitTooLarge(f"decorated orbit exceeds {cap} canonical forms")
                queue.append(canon)
    return seen


def orbit_key(n: int, perms: Sequence[Sequence[int]], movable: Sequence[int], cap: int | None = None) -> tuple:
    """Least canonical form over the orbit; equal keys mean equivalent configurations."""
    return min(orbit_forms(n, perms, movable, cap))


def decorated_classes(d: BranchDivisor, n: int, *, max_orbit: int | None = None) -> list[DecoratedClass]:
    """Every decorated class ``dc`` with ``q(dc) = d``: values of multiplicity ``k >= 2`` become disks of ``k`` simple values."""
    sizes = list(d.multiplicities)
    decorated = [k >= 2 for k in sizes]
    movable = _movable(sizes, decorated)
    ts = [Permutation.transposition(n, a, b).images for a, b in itertools.combinations(range(n), 2)] if n > 1 else []
    ident = tuple(range(n))
    covered: set = set()
    out = []
    for word in itertools.product(ts, repeat=d.total):
        acc = ident
        for t in word:
            acc = _compose(acc, t)
        if acc != ident:
            continue
        if len(_components(n, [CriticalFiberDatum(str(i), Permutation(t)) for i, t in enumerate(word)])) != 1:
            continue
        canon, _ = canonical_labelings(word, n)
        if canon in covered:
            continue
        forms = orbit_forms(n, word, movable, max_orbit)
        covered |= forms
        key = iter(min(forms))
        blocks = tuple(Block(pos, k >= 2, tuple(Permutation(next(key)) for _ in range(k))) for pos, k in d.entries)
        out.append(DecoratedClass(n, blocks, max_orbit))
    return out


@dataclass(frozen=True, eq=False)
class DecoratedClass:
    """A simple covering with disk groupings, up to per-disk braid moves and conjugation.

    Equality and hashing go through :attr:`orbit_key`, computed on first use.
    """

    n: int
    blocks: tuple[Block, ...]
    max_orbit: int | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        blocks = tuple(self.blocks)
        object.__setattr__(self, "blocks", blocks)
        labels = [b.label for b in blocks]
        if len(set(labels)) != len(labels):
            raise ValueError(f"repeated block labels {labels}")
        perms = self.simple_fibers
        for p in perms:
            if p.n != self.n:
                raise ValueError(f"transposition {p} has degree {p.n}, expected {self.n}")
        acc = tuple(range(self.n))
        for p in perms:
            acc = _compose(acc, p.images)
        if any(i != j for i, j in enumerate(acc)):
            raise ValueError(f"product of the simple values is {Permutation(acc)}, not the identity")
        comps = _components(self.n, [CriticalFiberDatum(str(i), p) for i, p in enumerate(perms)])
        if len(comps) != 1:
            raise ValueError("underlying simple covering is disconnected")

    @property
    def simple_fibers(self) -> tuple[Permutation, ...]:
        return tuple(t for b in self.blocks for t in b.transpositions)

    @property
    def structure(self) -> tuple:
        return tuple((b.label, b.decorated, len(b.transpositions)) for b in self.blocks)

    @property
    def labels(self) -> tuple[Position, ...]:
        return tuple(b.label for b in self.blocks if b.decorated)

    @functools.cached_property
    def orbit_key(self) -> tuple:
        movable = _movable([len(b.transpositions) for b in self.blocks], [b.decorated for b in self.blocks])
        return orbit_key(self.n, [p.images for p in self.simple_fibers], movable, self.max_orbit)

    def _identity(self) -> tuple:
        return (self.n, tuple((_pos_key(lab), dec, k) for lab, dec, k in self.structure), self.orbit_key)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DecoratedClass):
            return NotImplemented
        return self._identity() == other._identity()

    def __hash__(self) -> int:
        return hash(self._identity())

    def representative(self) -> DecoratedClass:
        """The same class with its transpositions replaced by the orbit key."""
        key = iter(self.orbit_key)
        blocks = tuple(Block(b.label, b.decorated, tuple(Permutation(next(key)) for _ in b.transpositions))
                       for b in self.blocks)
        return DecoratedClass(self.n, blocks, self.max_orbit)

    @classmethod
    def from_simple(cls, b: BoundaryClass, grouping: DiskGrouping, max_orbit: int | None = None) -> DecoratedClass:
        if not b.is_simple:
            raise ValueError("a decorated class needs a simple covering")
        if sum(len(g) for g in grouping.groups) != len(b.fibers):
            raise ValueError("grouping does not cover the fibres")
        blocks = []
        for g, lab in zip(grouping.groups, grouping.labels):
            if lab is None:
                blocks += [Block(b.fibers[i].position, False, (b.fibers[i].monodromy,)) for i in g]
            else:
                blocks.append(Block(lab, True, tuple(b.fibers[i].monodromy for i in g)))
        return cls(b.n, tuple(blocks), max_orbit)


def ve_equivalent(a: BoundaryClass | Sequence[Permutation], b: BoundaryClass | Sequence[Permutation],
                  grouping: DiskGrouping, *, max_orbit: int | None = None) -> Verdict:
    """Decide whether two simple configurations lie in one orbit of per-disk moves and conjugation.

    Accepts simple boundary classes or bare transposition sequences (whose
    product need not be the identity, e.g. a configuration inside one disk).
    """
    pa = [f.monodromy for f in a.fibers] if isinstance(a, BoundaryClass) else list(a)
    pb = [f.monodromy for f in b.fibers] if isinstance(b, BoundaryClass) else list(b)
    if isinstance(a, BoundaryClass) and isinstance(b, BoundaryClass):
        if a.n != b.n:
            return Verdict.INEQUIVALENT
        for g, lab in zip(grouping.groups, grouping.labels):
            if lab is None and [a.fibers[i].position for i in g] != [b.fibers[i].position for i in g]:
                return Verdict.INEQUIVALENT
    if len(pa) != len(pb) or sum(len(g) for g in grouping.groups) != len(pa):
        return Verdict.INEQUIVALENT
    if not pa:
        return Verdict.EQUIVALENT
    n = pa[0].n
    if any(p.n != n for p in pa + pb):
        return Verdict.INEQUIVALENT
    # the product of each disk is a move invariant, up to the global conjugation
    sizes = [len(g) for g in grouping.groups]
    decorated = [lab is not None or len(g) >= 2 for g, lab in zip(grouping.groups, grouping.labels)]
    movable = _movable(sizes, decorated)
    try:
        ka = orbit_key(n, [p.images for p in pa], movable, max_orbit)
        kb = orbit_key(n, [p.images for p in pb], movable, max_orbit)
    except OrbitTooLarge:
        return Verdict.UNDECIDED
    return Verdict.EQUIVALENT if ka == kb else Verdict.INEQUIVALENT


# -- perturbation sets and nu -------------------------------------------------------


def _point_orbits(point: SingularPointDatum, n: int, max_words: int | None) -> list[list[Permutation]]:
    """Orbit representatives of simple perturbations of one point, as global transpositions."""
    sheets = sorted(point.sheets)
    local = {s: i for i, s in enumerate(sheets)}
    deg = len(sheets)
    tau = [0] * deg
    for c in point.cycles:
        for k, s in enumerate(c):
            tau[local[s]] = local[c[(k + 1) % len(c)]]
    seed_perms = simple_factorization(point, n)
    seed_local = []
    for t in seed_perms:
        a, b = sorted(t.support())
        img = list(range(deg))
        img[local[a]], img[local[b]] = local[b], local[a]
        seed_local.append(tuple(img))
    reps = factorization_orbits(tuple(tau), point.index - 1, images_to_word(seed_local), max_words=max_words)
    out = []
    for word in reps:
        perms = []
        for img in word_to_images(word, deg):
            a, b = [sheets[i] for i, j in enumerate(img) if i != j]
            perms.append(Permutation.transposition(n, a, b))
        out.append(perms)
    return out


def perturbation_set(b: BoundaryClass, resolution: str = "simple", *,
                     max_words: int | None = None, max_orbit: int | None = None) -> list[DecoratedClass]:
    """Distinct decorated classes of the simple perturbations of ``b``, one disk per critical value.

    Every critical point contributes the orbits of its transitive
    transposition factorizations (closed under braid moves and the
    centraliser of its monodromy).  The combinations are compared by orbit
    key only when there is more than one, so a singleton answer never needs
    the (possibly large) decorated orbit.
    """
    if resolution != "simple":
        raise ValueError("only simple resolutions are supported")
    per_fiber = []
    for f in b.fibers:
        options = [_point_orbits(p, b.n, max_words) for p in f.critical_points()]
        per_fiber.append([sum(choice, []) for choice in itertools.product(*options)])
    candidates = []
    for combo in itertools.product(*per_fiber):
        blocks = tuple(Block(f.position, len(ts) >= 2, tuple(ts)) for f, ts in zip(b.fibers, combo))
        candidates.append(DecoratedClass(b.n, blocks, max_orbit))
    if len(candidates) <= 1:
        return candidates
    return list(dict.fromkeys(candidates))


def nu(b: BoundaryClass, *, max_orbit: int | None = None) -> DecoratedClass:
    """Perturb every critical point into simple values; multiple values become disk centres."""
    simple, partition = perturb_all(b)
    blocks = []
    for f, idx in zip(b.fibers, partition):
        ts = tuple(simple.fibers[i].monodromy for i in idx)
        blocks.append(Block(f.position, len(ts) >= 2, ts))
    return DecoratedClass(b.n, tuple(blocks), max_orbit)


def nu_inverse(dc: DecoratedClass) -> BoundaryClass:
    """Collapse each disk to its centre, merging the simple values inside it."""
    fibers = []
    for blk in dc.blocks:
        if blk.decorated:
            merged = merge_fibers([CriticalFiberDatum(f"{blk.label}.{i}", t) for i, t in enumerate(blk.transpositions)],
                                  blk.label, dc.n)
            if merged is None:
                raise AssertionError("a disk of simple values merged to a regular value")
            fibers.append(merged)
        else:
            fibers.append(CriticalFiberDatum(blk.label, blk.transpositions[0]))
    return BoundaryClass(dc.n, tuple(fibers)).canonical()


def q(dc: DecoratedClass) -> BranchDivisor:
    return BranchDivisor(tuple((blk.label, len(blk.transpositions)) for blk in dc.blocks))


# -- partition property ------------------------------------------------------------------


@dataclass(frozen=True)
class PartitionReport:
    """Outcome of :func:`verify_partition`."""

    ok: bool
    coarse_count: int
    fine_count: int
    reach_sizes: tuple[int, ...]
    overlaps: int
    missing: int
    extra: int
    empty: int

    def lines(self) -> list[str]:
        status = "PASS" if self.ok else "FAIL"
        return [f"{status} partition: {self.coarse_count} coarse classes, {self.fine_count} refined classes, "
                f"reach sizes {list(self.reach_sizes)}, overlaps={self.overlaps} missing={self.missing} "
                f"extra={self.extra} empty={self.empty}"]


def simple_refinement(d: BranchDivisor) -> tuple[BranchDivisor, list[list[int]]]:
    """Split every value of multiplicity ``k`` into ``k`` simple values inside its disk."""
    entries, disks = [], []
    for pos, k in d.entries:
        idx = []
        for j in range(k):
            idx.append(len(entries))
            entries.append((pos if k == 1 else f"{pos}.{j}", 1))
        disks.append(idx)
    return BranchDivisor(tuple(entries)), disks


def _local_configs(fiber: CriticalFiberDatum, sub: Sequence[tuple[Position, int]], n: int) -> list[list[CriticalFiberDatum]]:
    """Sequences of fibres at the positions of ``sub`` whose merge is exactly ``fiber``."""
    mults = [k for _, k in sub]
    positions = [p for p, _ in sub]
    out = []
    target = fiber.monodromy.images
    for prefix in itertools.product(*[fiber_data(n, m) for m in mults[:-1]]):
        acc = tuple(range(n))
        for img, _ in prefix:
            acc = _compose(acc, img)
        last = _compose(_inverse(acc), target)
        for pts in _groupings_of(last, mults[-1]):
            seq = [CriticalFiberDatum(pos, Permutation(img), p)
                   for pos, (img, p) in zip(positions, list(prefix) + [(last, pts)])]
            merged = merge_fibers(seq, fiber.position, n)
            if merged == fiber:
                out.append(seq)
    return out


def verify_partition(d: BranchDivisor, refined: BranchDivisor, disks: Sequence[Sequence[int]],
                     n: int, chi: int) -> PartitionReport:
    """Check that perturbing each class over ``d`` within the disks partitions the fibre over ``refined``.

    ``disks[i]`` lists the (contiguous) indices of ``refined`` lying in the
    disk around the ``i``-th value of ``d``.
    """
    flat = [i for g in disks for i in g]
    if flat != list(range(len(refined.entries))) or len(disks) != len(d.entries):
        raise ValueError("disks must split the refined divisor into contiguous blocks, one per value")
    for (pos, k), g in zip(d.entries, disks):
        if sum(refined.entries[i][1] for i in g) != k:
            raise ValueError(f"refinement of {pos} does not preserve its multiplicity {k}")
    coarse = ll_fiber(d, n, chi)
    fine = set(ll_fiber(refined, n, chi))
    reaches = []
    for b in coarse:
        per_fiber = [_local_configs(f, [refined.entries[i] for i in g], n) for f, g in zip(b.fibers, disks)]
        reach = set()
        for combo in itertools.product(*per_fiber):
            fibers = tuple(f for seq in combo for f in seq)
            reach.add(BoundaryClass(n, fibers).canonical())
        reaches.append(reach)
    union: set[BoundaryClass] = set()
    overlaps = 0
    for r in reaches:
        overlaps += len(union & r)
        union |= r
    missing = len(fine - union)
    extra = len(union - fine)
    empty = sum(1 for r in reaches if not r)
    ok = overlaps == 0 and missing == 0 and extra == 0 and empty == 0 and bool(coarse)
    return PartitionReport(ok, len(coarse), len(fine), tuple(len(r) for r in reaches), overlaps, missing, extra, empty)
