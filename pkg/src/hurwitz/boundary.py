"""Degenerate coverings: fibres with singular points, and degeneration/perturbation.

A critical fibre over a value ``w`` is described by the local monodromy
``sigma_w`` together with a grouping of some of its cycles into singular
points.  A singular point ``v`` glues ``m_v`` branches (one per grouped
cycle) and carries a local genus ``g_v``.  Ungrouped cycles of length at
least 2 are ordinary ramification points; ungrouped fixed points are
regular.

Counting rules::

    milnor   mu_v  = 2 g_v + m_v - 1
    index    ind_v = mu_v + deg_v          (deg_v = total length of v's cycles)
    multiplicity(w) = sum over grouped v of (ind_v - 1)
                    + sum over ungrouped cycles of (len - 1)

Products of monodromies are read left to right (see :mod:`hurwitz.perm`).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .covering import BranchPoint, Constellation, Position
from .perm import (
    Permutation,
    _compose,
    _cycles,
    _inverse,
    canonical_labelings,
    relabel,
)


class InvalidBoundary(ValueError):
    """Fibre data that does not describe a degeneration of a connected covering."""


class MilnorBudgetError(InvalidBoundary):
    """A local perturbation whose Betti number and Milnor numbers do not add up."""


def _normal_cycle(c: Sequence[int]) -> tuple[int, ...]:
    c = tuple(c)
    k = c.index(min(c))
    return c[k:] + c[:k]


@dataclass(frozen=True)
class SingularPointDatum:
    """A point of a fibre: the cycles of ``sigma_w`` it contains and its local genus."""

    cycles: tuple[tuple[int, ...], ...]
    genus: int = 0

    def __post_init__(self) -> None:
        cycs = tuple(sorted(_normal_cycle(c) for c in self.cycles))
        if not cycs:
            raise InvalidBoundary("a singular point needs at least one branch")
        sheets = [s for c in cycs for s in c]
        if len(set(sheets)) != len(sheets):
            raise InvalidBoundary(f"branches {cycs} overlap")
        if self.genus < 0:
            raise InvalidBoundary("local genus must be non-negative")
        if len(cycs) == 1 and len(cycs[0]) == 1:
            # one unramified branch: regular when g = 0, and a positive genus
            # cannot be carried by a degree-one branch
            raise InvalidBoundary(f"point on the single unramified sheet {cycs[0][0]} is not critical")
        object.__setattr__(self, "cycles", cycs)

    @property
    def m(self) -> int:
        return len(self.cycles)

    @property
    def deg(self) -> int:
        return sum(len(c) for c in self.cycles)

    @property
    def milnor(self) -> int:
        return 2 * self.genus + self.m - 1

    @property
    def index(self) -> int:
        return self.milnor + self.deg

    @property
    def sheets(self) -> frozenset[int]:
        return frozenset(s for c in self.cycles for s in c)

    @property
    def is_ordinary(self) -> bool:
        """A smooth ramification point (one branch, genus zero)."""
        return self.m == 1 and self.genus == 0

    def sub_permutation(self, n: int) -> Permutation:
        """The part of ``sigma_w`` carried by this point; identity elsewhere."""
        return Permutation.from_cycles(n, self.cycles)

    def relabelled(self, label: Sequence[int]) -> SingularPointDatum:
        return SingularPointDatum(tuple(tuple(label[s] for s in c) for c in self.cycles), self.genus)


@dataclass(frozen=True)
class CriticalFiberDatum:
    """Local structure of a degenerate covering over one critical value."""

    position: Position
    monodromy: Permutation
    singular_points: tuple[SingularPointDatum, ...] = ()

    def __post_init__(self) -> None:
        pts = tuple(p for p in self.singular_points if not p.is_ordinary)
        pts = tuple(sorted(pts, key=lambda p: min(p.sheets)))
        own = {_normal_cycle(c) for c in _cycles(self.monodromy.images)}
        used: set[int] = set()
        for p in pts:
            for c in p.cycles:
                if c not in own:
                    raise InvalidBoundary(f"{c} is not a cycle of {self.monodromy} at {self.position}")
            if used & p.sheets:
                raise InvalidBoundary(f"singular points over {self.position} overlap")
            used |= p.sheets
        object.__setattr__(self, "singular_points", pts)
        if self.multiplicity < 1:
            raise InvalidBoundary(f"fibre over {self.position} is not critical")

    @property
    def n(self) -> int:
        return self.monodromy.n

    @property
    def multiplicity(self) -> int:
        grouped = self._grouped_sheets()
        total = sum(p.index - 1 for p in self.singular_points)
        total += sum(len(c) - 1 for c in _cycles(self.monodromy.images) if c[0] not in grouped)
        return total

    def _grouped_sheets(self) -> set[int]:
        return {s for p in self.singular_points for s in p.sheets}

    def critical_points(self) -> list[SingularPointDatum]:
        """Explicit singular points and implicit ordinary ones, by smallest sheet."""
        grouped = self._grouped_sheets()
        pts = list(self.singular_points)
        pts += [SingularPointDatum((c,), 0) for c in _cycles(self.monodromy.images)
                if len(c) > 1 and c[0] not in grouped]
        return sorted(pts, key=lambda p: min(p.sheets))

    @property
    def is_simple(self) -> bool:
        return not self.singular_points and self.monodromy.is_transposition()

    def relabelled(self, label: Sequence[int]) -> CriticalFiberDatum:
        """Rename sheet ``s`` as ``label[s]`` (conjugation of the monodromy)."""
        return CriticalFiberDatum(self.position, Permutation(relabel(self.monodromy.images, label)),
                                  tuple(p.relabelled(label) for p in self.singular_points))

    def moved_to(self, position: Position) -> CriticalFiberDatum:
        return CriticalFiberDatum(position, self.monodromy, self.singular_points)

    def group_key(self) -> tuple:
        return tuple((p.cycles, p.genus) for p in self.singular_points)

    def cycle_indices(self, point: SingularPointDatum) -> list[int]:
        """Indices of ``point``'s cycles in the ordering of :func:`hurwitz.perm.cycles`."""
        order = {_normal_cycle(c): i for i, c in enumerate(_cycles(self.monodromy.images))}
        return sorted(order[c] for c in point.cycles)

    @classmethod
    def from_cycle_indices(cls, position: Position, monodromy: Permutation,
                           groups: Iterable[tuple[Sequence[int], int]]) -> CriticalFiberDatum:
        cycs = _cycles(monodromy.images)
        pts = []
        for idx, genus in groups:
            try:
                pts.append(SingularPointDatum(tuple(cycs[i] for i in idx), genus))
            except IndexError:
                raise InvalidBoundary(f"cycle index out of range in {list(idx)} for {monodromy}") from None
        return cls(position, monodromy, tuple(pts))


def multiplicity(fiber: CriticalFiberDatum) -> int:
    return fiber.multiplicity


def _components(n: int, fibers: Sequence[CriticalFiberDatum]) -> list[frozenset[int]]:
    """Sheets joined by the monodromies and by the singular points."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for f in fibers:
        for i, j in enumerate(f.monodromy.images):
            union(i, j)
        for p in f.singular_points:
            first = min(p.sheets)
            for s in p.sheets:
                union(first, s)
    blocks: dict[int, set[int]] = {}
    for s in range(n):
        blocks.setdefault(find(s), set()).add(s)
    return [frozenset(blocks[r]) for r in sorted(blocks)]


@dataclass(frozen=True)
class BoundaryClass:
    """A possibly degenerate ``n``-sheeted covering, as ordered critical fibres."""

    n: int
    fibers: tuple[CriticalFiberDatum, ...] = ()

    def __post_init__(self) -> None:
        fibers = tuple(self.fibers)
        object.__setattr__(self, "fibers", fibers)
        if self.n < 1:
            raise InvalidBoundary("degree must be positive")
        for f in fibers:
            if f.n != self.n:
                raise InvalidBoundary(f"fibre over {f.position} has degree {f.n}, expected {self.n}")
        positions = [f.position for f in fibers]
        if len(set(positions)) != len(positions):
            raise InvalidBoundary(f"repeated critical values {positions}")
        acc = tuple(range(self.n))
        for f in fibers:
            acc = _compose(acc, f.monodromy.images)
        if any(i != j for i, j in enumerate(acc)):
            raise InvalidBoundary(f"product of monodromies is {Permutation(acc)}, not the identity")
        comps = _components(self.n, fibers)
        if len(comps) != 1:
            raise InvalidBoundary(
                "orbit/singular-point graph is disconnected; components "
                + ", ".join("{" + ",".join(map(str, sorted(c))) + "}" for c in comps))
        chi = 2 * self.n - self.total_multiplicity
        if chi > 2 or chi % 2:
            raise InvalidBoundary(f"total multiplicity {self.total_multiplicity} gives Euler characteristic {chi}")

    @classmethod
    def from_constellation(cls, c: Constellation) -> BoundaryClass:
        return cls(c.n, tuple(CriticalFiberDatum(bp.position, bp.monodromy) for bp in c.branch_points))

    @property
    def positions(self) -> tuple[Position, ...]:
        return tuple(f.position for f in self.fibers)

    @property
    def total_multiplicity(self) -> int:
        return sum(f.multiplicity for f in self.fibers)

    @property
    def is_nonsingular(self) -> bool:
        return not any(f.singular_points for f in self.fibers)

    @property
    def is_simple(self) -> bool:
        return all(f.is_simple for f in self.fibers)

    def to_constellation(self) -> Constellation:
        if not self.is_nonsingular:
            raise InvalidBoundary("a covering with singular points is not a constellation")
        return Constellation(self.n, tuple(BranchPoint(f.position, f.monodromy) for f in self.fibers))

    def relabelled(self, label: Sequence[int]) -> BoundaryClass:
        return BoundaryClass(self.n, tuple(f.relabelled(label) for f in self.fibers))

    def canonical(self) -> BoundaryClass:
        """Representative of the simultaneous-conjugacy class.

        Monodromies are minimised first (as in :func:`hurwitz.perm.canonical_form`);
        ties are broken by the relabelled singular-point data.
        """
        _, labelings = canonical_labelings([f.monodromy.images for f in self.fibers], self.n)
        if not any(f.singular_points for f in self.fibers):
            return self.relabelled(labelings[0])
        best = None
        for lab in labelings:
            cand = self.relabelled(lab)
            key = tuple(f.group_key() for f in cand.fibers)
            if best is None or key < best[0]:
                best = (key, cand)
        return best[1]

    def key(self) -> tuple:
        """Hashable description of this exact representative."""
        return (self.n, tuple((f.position if isinstance(f.position, str) else repr(f.position),
                               f.monodromy.images, f.group_key()) for f in self.fibers))


def total_multiplicity(b: BoundaryClass) -> int:
    return b.total_multiplicity


def chi_source(b: BoundaryClass) -> int:
    """Euler characteristic of the smooth surface that ``b`` degenerates from."""
    return 2 * b.n - b.total_multiplicity


def same_class(a: BoundaryClass, b: BoundaryClass) -> bool:
    return a.n == b.n and a.canonical() == b.canonical()


# -- merging ------------------------------------------------------------------


def merge_fibers(fibers: Sequence[CriticalFiberDatum], position: Position, n: int) -> CriticalFiberDatum | None:
    """Collapse consecutive fibres into one value by wedging each preimage component.

    Each connected piece of the preimage of the merged disk (sheets joined by
    the members' monodromies and singular points) becomes a single point.
    Its branches are the cycles of the ordered product lying in the piece,
    and its genus follows from Riemann-Hurwitz on the piece:
    ``chi = |piece| - sum(len - 1 over member cycles) - sum(m_x - 1 over member points)``
    and ``2 g = 2 - chi + sum(mu_x) - m``.
    Returns ``None`` when nothing in the block is critical.
    """
    acc = tuple(range(n))
    for f in fibers:
        acc = _compose(acc, f.monodromy.images)
    comps = _components(n, fibers)
    member_cycles = [(c, len(c)) for f in fibers for c in _cycles(f.monodromy.images)]
    member_points = [p for f in fibers for p in f.singular_points]
    prod_cycles = _cycles(acc)
    points = []
    for comp in comps:
        ram = sum(ln - 1 for c, ln in member_cycles if c[0] in comp)
        inside = [p for p in member_points if min(p.sheets) in comp]
        chi = len(comp) - ram - sum(p.m - 1 for p in inside)
        mu = sum(p.milnor for p in inside)
        if len(comp) - chi + mu == 0:
            continue
        branches = tuple(c for c in prod_cycles if c[0] in comp)
        twice_g = 2 - chi + mu - len(branches)
        if twice_g < 0 or twice_g % 2:
            raise AssertionError(f"non-integral local genus {twice_g}/2 while merging at {position}")
        points.append(SingularPointDatum(branches, twice_g // 2))
    if not points:
        return None
    return CriticalFiberDatum(position, Permutation(acc), tuple(points))


def hurwitz_move_fibers(fibers: Sequence[CriticalFiberDatum], i: int) -> tuple[CriticalFiberDatum, ...]:
    """Braid generator on fibres: ``(F_i, F_i+1) -> (F_i+1 conjugated by sigma_i^-1, F_i)``.

    The monodromy moving left becomes ``sigma_i sigma_i+1 sigma_i^-1``; the
    left-to-right product of the whole sequence is unchanged.
    """
    if not 0 <= i < len(fibers) - 1:
        raise IndexError(f"move index {i} out of range for {len(fibers)} fibres")
    left, right = fibers[i], fibers[i + 1]
    moved = right.relabelled(_inverse(left.monodromy.images))
    return tuple(fibers[:i]) + (moved, left) + tuple(fibers[i + 2:])


@dataclass(frozen=True)
class Degeneration:
    """Output of :func:`degenerate_audited`: the result and the braid moves applied first."""

    boundary: BoundaryClass
    moves: tuple[int, ...]
    order: tuple[int, ...]


def _check_partition(partition: Sequence[Sequence[int]], k: int) -> list[list[int]]:
    classes = [sorted(set(int(i) for i in cls)) for cls in partition]
    flat = [i for cls in classes for i in cls]
    if sorted(flat) != list(range(k)) or any(not cls for cls in classes):
        raise ValueError(f"{partition} is not a partition of the {k} fibres")
    return sorted(classes, key=lambda cls: cls[0])


def degenerate_audited(b: BoundaryClass, partition: Sequence[Sequence[int]],
                       wedge_positions: Sequence[Position] | None = None) -> Degeneration:
    """Merge each partition class of fibres into a single critical value.

    Classes that are not contiguous are first made contiguous by braid moves
    (an insertion sort moving fibres leftwards); the moves are reported.
    """
    classes = _check_partition(partition, len(b.fibers))
    order = [i for cls in classes for i in cls]
    fibers = list(b.fibers)
    current = list(range(len(fibers)))
    moves: list[int] = []
    for target, src in enumerate(order):
        j = current.index(src)
        while j > target:
            fibers = list(hurwitz_move_fibers(fibers, j - 1))
            current[j - 1], current[j] = current[j], current[j - 1]
            moves.append(j - 1)
            j -= 1
    if wedge_positions is None:
        wedge_positions = [b.fibers[cls[0]].position if len(cls) == 1
                           else "+".join(str(b.fibers[i].position) for i in cls) for cls in classes]
    if len(wedge_positions) != len(classes):
        raise ValueError("one wedge position per partition class required")
    merged = []
    start = 0
    for cls, pos in zip(classes, wedge_positions):
        block = fibers[start:start + len(cls)]
        start += len(cls)
        fiber = merge_fibers(block, pos, b.n)
        if fiber is None:
            raise AssertionError("a class of critical values merged to a regular value")
        merged.append(fiber)
    return Degeneration(BoundaryClass(b.n, tuple(merged)), tuple(moves), tuple(order))


def degenerate(b: BoundaryClass, partition: Sequence[Sequence[int]],
               wedge_positions: Sequence[Position] | None = None) -> BoundaryClass:
    return degenerate_audited(b, partition, wedge_positions).boundary


# -- perturbation ---------------------------------------------------------------


def simple_factorization(point: SingularPointDatum, n: int) -> list[Permutation]:
    """Transpositions, ``ind - 1`` of them, multiplying to the point's cycles.

    Each cycle ``(a1 ... al)`` becomes ``(a1 a2)(a1 a3)...(a1 al)``; branch
    ``i > 1`` is then tied to the first by ``(x1 xi)(x1 xi)`` and every unit
    of genus adds ``(x1 x2)(x1 x2)``.  The factors generate a transitive
    group on the point's sheets.
    """
    if point.deg < 2:
        raise InvalidBoundary("a point on a single sheet admits no transposition factorization")
    out = []
    for c in point.cycles:
        for a in c[1:]:
            out.append(Permutation.transposition(n, c[0], a))
    x1 = point.cycles[0][0]
    for c in point.cycles[1:]:
        t = Permutation.transposition(n, x1, c[0])
        out += [t, t]
    other = next(s for s in sorted(point.sheets) if s != x1)
    t = Permutation.transposition(n, x1, other)
    out += [t, t] * point.genus
    assert len(out) == point.index - 1
    return out


def _point(b: BoundaryClass, ref: tuple[int, int]) -> tuple[CriticalFiberDatum, SingularPointDatum]:
    fi, pi = ref
    fiber = b.fibers[fi]
    pts = fiber.critical_points()
    if not 0 <= pi < len(pts):
        raise IndexError(f"fibre {fi} has {len(pts)} critical points")
    return fiber, pts[pi]


def _residual(fiber: CriticalFiberDatum, point: SingularPointDatum) -> tuple[tuple[int, ...], tuple[SingularPointDatum, ...]]:
    images = list(fiber.monodromy.images)
    for s in point.sheets:
        images[s] = s
    rest = tuple(p for p in fiber.singular_points if p != point)
    return tuple(images), rest


def _splice(b: BoundaryClass, fi: int, point: SingularPointDatum,
            local: Sequence[CriticalFiberDatum]) -> BoundaryClass:
    """Replace ``point`` over fibre ``fi`` by the local fibres, keeping the rest at ``w``."""
    fiber = b.fibers[fi]
    res_images, res_points = _residual(fiber, point)
    local = list(local)
    if local and local[-1].position == fiber.position:
        tail = local.pop()
        res_images = _compose(tail.monodromy.images, res_images)
        res_points = res_points + tail.singular_points
    for f in local:
        if f.position == fiber.position:
            raise InvalidBoundary("a local fibre at the original value must come last")
    new = list(local)
    if any(i != j for i, j in enumerate(res_images)) or res_points:
        new.append(CriticalFiberDatum(fiber.position, Permutation(res_images), res_points))
    fibers = b.fibers[:fi] + tuple(new) + b.fibers[fi + 1:]
    return BoundaryClass(b.n, fibers)


def perturb_simple(b: BoundaryClass, ref: tuple[int, int], new_positions: Sequence[Position]) -> BoundaryClass:
    """Split the critical point ``ref = (fibre index, point index)`` into simple values.

    The transpositions of :func:`simple_factorization` are placed at
    ``new_positions`` in the slot of the original fibre; whatever else lies
    over that value stays behind it.
    """
    fiber, point = _point(b, ref)
    factors = simple_factorization(point, b.n)
    if len(new_positions) != len(factors):
        raise ValueError(f"point of index {point.index} needs {len(factors)} positions, got {len(new_positions)}")
    if len(set(new_positions)) != len(new_positions):
        raise ValueError("new positions must be distinct")
    local = [CriticalFiberDatum(pos, t) for pos, t in zip(new_positions, factors)]
    return _splice(b, ref[0], point, local)


def local_euler_characteristic(n: int, local: Sequence[CriticalFiberDatum], sheets: frozenset[int]) -> int:
    """Euler characteristic of the (possibly singular) surface over a disk containing ``local``."""
    ram = sum(len(c) - 1 for f in local for c in _cycles(f.monodromy.images) if c[0] in sheets)
    pinch = sum(p.m - 1 for f in local for p in f.singular_points)
    return len(sheets) - ram - pinch


def perturb_general(b: BoundaryClass, ref: tuple[int, int], local_config: Sequence[CriticalFiberDatum]) -> BoundaryClass:
    """Replace a critical point by an arbitrary local configuration over its disk.

    The configuration must satisfy ``b1 + sum(mu_x) = mu_v`` with
    ``b1 = 1 - chi``, be connected over the point's sheets, and multiply to
    the point's part of the monodromy.
    """
    fi = ref[0]
    _, point = _point(b, ref)
    sheets = point.sheets
    local = list(local_config)
    for f in local:
        if f.n != b.n:
            raise InvalidBoundary("local fibres must have the covering's degree")
        moved = {s for s, t in enumerate(f.monodromy.images) if s != t}
        grouped = {s for p in f.singular_points for s in p.sheets}
        if not (moved | grouped) <= sheets:
            raise InvalidBoundary(f"local fibre at {f.position} touches sheets outside the point")
    chi = local_euler_characteristic(b.n, local, sheets)
    mu_sum = sum(p.milnor for f in local for p in f.singular_points)
    if (1 - chi) + mu_sum != point.milnor:
        raise MilnorBudgetError(f"b1 + sum(mu) = {1 - chi} + {mu_sum} differs from mu_v = {point.milnor}")
    acc = tuple(range(b.n))
    for f in local:
        acc = _compose(acc, f.monodromy.images)
    if acc != point.sub_permutation(b.n).images:
        raise InvalidBoundary(f"local monodromy product {Permutation(acc)} differs from the point's {point.sub_permutation(b.n)}")
    inside = [c for c in _components(b.n, local) if c & sheets]
    if len(inside) != 1:
        raise InvalidBoundary("local surface over the disk is disconnected")
    existing = {f.position for i, f in enumerate(b.fibers) if i != fi}
    for f in local:
        if f.position in existing:
            raise InvalidBoundary(f"position {f.position} already carries a critical value")
    return _splice(b, fi, point, local)


def fresh_labels(base: Position, count: int, taken: Iterable[Position] = ()) -> list[str]:
    taken = {str(t) for t in taken}
    out = []
    for j in itertools.count():
        lab = f"{base}.{j}"
        if lab not in taken:
            out.append(lab)
        if len(out) == count:
            return out
    raise AssertionError


def perturb_all(b: BoundaryClass) -> tuple[BoundaryClass, list[list[int]]]:
    """Fully simple perturbation of every critical point.

    Returns the simple covering and, for each original fibre, the indices of
    the transposition fibres it was split into.
    """
    fibers: list[CriticalFiberDatum] = []
    partition: list[list[int]] = []
    taken = {str(f.position) for f in b.fibers}
    for f in b.fibers:
        block = []
        for point in f.critical_points():
            block += simple_factorization(point, b.n)
        labels = fresh_labels(f.position, len(block), taken) if len(block) > 1 else [f.position]
        taken.update(str(x) for x in labels)
        partition.append(list(range(len(fibers), len(fibers) + len(block))))
        fibers += [CriticalFiberDatum(pos, t) for pos, t in zip(labels, block)]
    return BoundaryClass(b.n, tuple(fibers)), partition
