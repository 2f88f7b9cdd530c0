"""Nonsingular branched coverings of the sphere as constellations.

A covering of degree ``n`` is recorded by its branch points and the local
monodromy around each of them.  The monodromies, read in the listed order
and multiplied left to right, give the identity, and together they act
transitively on the sheets (the covering surface is connected).
"""
from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import config
from .perm import (
    Permutation,
    PermTuple,
    _compose,
    _cycles,
    _inverse,
    canonical_labelings,
    permutations_of_type,
    raw_orbits,
)
from .polyalg import SpherePoint

Position = Union[str, SpherePoint]


class InvalidCovering(ValueError):
    """Monodromy data that does not describe a connected branched covering."""


@dataclass(frozen=True)
class BranchPoint:
    position: Position
    monodromy: Permutation

    def __post_init__(self) -> None:
        if self.monodromy.is_identity():
            raise InvalidCovering(f"branch point {self.position} has trivial monodromy")


@dataclass(frozen=True)
class Constellation:
    """An ``n``-sheeted branched covering of the sphere.

    When positions are abstract labels their listed order is the loop
    order.  Coverings read off from geometry list their points in the order
    given by :func:`loop_order`.
    """

    n: int
    branch_points: tuple[BranchPoint, ...] = ()

    def __post_init__(self) -> None:
        bps = tuple(self.branch_points)
        object.__setattr__(self, "branch_points", bps)
        if self.n < 1:
            raise InvalidCovering("degree must be positive")
        for bp in bps:
            if bp.monodromy.n != self.n:
                raise InvalidCovering(f"monodromy at {bp.position} has degree {bp.monodromy.n}, expected {self.n}")
        positions = [bp.position for bp in bps]
        if len(set(positions)) != len(positions):
            raise InvalidCovering(f"repeated branch positions {positions}")
        prod = self.monodromy_tuple().product()
        if not prod.is_identity():
            raise InvalidCovering(f"product of monodromies is {prod}, not the identity")
        if len(raw_orbits([bp.monodromy.images for bp in bps], self.n)) != 1:
            raise InvalidCovering("monodromy group is not transitive (covering surface disconnected)")

    @classmethod
    def from_perms(cls, n: int, perms: Iterable[Permutation | Sequence[int]],
                   positions: Sequence[Position] | None = None) -> Constellation:
        perms = [p if isinstance(p, Permutation) else Permutation(tuple(p)) for p in perms]
        if positions is None:
            positions = default_labels(len(perms))
        return cls(n, tuple(BranchPoint(pos, p) for pos, p in zip(positions, perms, strict=True)))

    def monodromy_tuple(self) -> PermTuple:
        return PermTuple(self.n, tuple(bp.monodromy for bp in self.branch_points))

    @property
    def positions(self) -> tuple[Position, ...]:
        return tuple(bp.position for bp in self.branch_points)

    def canonical(self) -> Constellation:
        canon, _ = canonical_labelings([bp.monodromy.images for bp in self.branch_points], self.n)
        return Constellation(self.n, tuple(BranchPoint(bp.position, Permutation(c))
                                           for bp, c in zip(self.branch_points, canon)))

    @property
    def genus(self) -> int:
        return (2 - euler_characteristic(self)) // 2


def default_labels(k: int, prefix: str = "b") -> list[str]:
    return [f"{prefix}{i}" for i in range(k)]


def euler_characteristic(c: Constellation) -> int:
    """Riemann-Hurwitz: ``2n - sum_w (n - #cycles(sigma_w))``."""
    chi = 2 * c.n - sum(c.n - bp.monodromy.num_cycles for bp in c.branch_points)
    if (2 - chi) % 2 or chi > 2:
        raise InvalidCovering(f"Euler characteristic {chi} is not that of a connected closed surface")
    return chi


def value_multiplicity(c: Constellation, w: BranchPoint | Position) -> int:
    """``n - #cycles`` of the monodromy at ``w``; 1 for a simple critical value."""
    for bp in c.branch_points:
        if bp == w or bp.position == w:
            return c.n - bp.monodromy.num_cycles
    raise KeyError(f"{w} is not a branch point of this covering")


def is_simple_covering(c: Constellation) -> bool:
    return all(bp.monodromy.is_transposition() for bp in c.branch_points)


def loop_order(points: Sequence[complex], base: complex) -> list[int]:
    """Indices of ``points`` sorted by argument, then modulus, as seen from ``base``.

    Arguments are measured counterclockwise from the direction pointing from
    ``base`` to the origin, so a base point outside all the points sees them
    in a single sweep.
    """
    ref = cmath.phase(-base) if base else 0.0

    def key(i: int) -> tuple[float, float]:
        v = points[i] - base
        ang = (cmath.phase(v) - ref + cmath.pi) % (2 * cmath.pi)
        return (ang, abs(v))

    return sorted(range(len(points)), key=key)


def _pad_type(n: int, cycle_type: Sequence[int]) -> tuple[int, ...]:
    parts = [int(x) for x in cycle_type if int(x) > 0]
    if sum(parts) > n:
        raise ValueError(f"cycle type {list(cycle_type)} exceeds degree {n}")
    parts += [1] * (n - sum(parts))
    return tuple(sorted(parts, reverse=True))


@dataclass(frozen=True)
class Enumeration:
    """Result of :func:`enumerate_coverings`.

    ``tuple_count`` counts labelled monodromy tuples (not classes); the
    Hurwitz number is ``tuple_count / n!``.
    """

    n: int
    cycle_types: tuple[tuple[int, ...], ...]
    classes: tuple[Constellation, ...]
    tuple_count: int

    @property
    def hurwitz_number(self) -> Fraction:
        return Fraction(self.tuple_count, _factorial(self.n))


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def enumerate_coverings(n: int, cycle_types: Sequence[Sequence[int]], *,
                        positions: Sequence[Position] | None = None,
                        bound: int | None = None) -> Enumeration:
    """Every connected covering with the prescribed local cycle types, up to isomorphism.

    Cycle types may omit trailing 1s.  The first entry is fixed to one
    representative of its conjugacy class; the last is forced by the product
    condition.
    """
    config.check_degree(n, bound)
    types = tuple(_pad_type(n, t) for t in cycle_types)
    for t in types:
        if t == (1,) * n:
            raise ValueError("a branch point cannot have trivial monodromy")
    k = len(types)
    positions = list(positions) if positions is not None else default_labels(k)
    if len(positions) != k:
        raise ValueError("one position per cycle type required")
    if k == 0:
        classes = (Constellation(n, ()),) if n == 1 else ()
        return Enumeration(n, types, classes, len(classes))

    by_type = {t: permutations_of_type(n, t) for t in set(types)}
    first_class = by_type[types[0]]
    rep = first_class[0]
    target_last = types[-1]
    seen: set[tuple] = set()
    fixed_count = 0
    middles = [by_type[t] for t in types[1:-1]]
    for middle in itertools.product(*middles):
        acc = rep
        for p in middle:
            acc = _compose(acc, p)
        if k == 1:
            if any(i != j for i, j in enumerate(acc)):
                continue
            tup = (rep,)
        else:
            last = _inverse(acc)
            if tuple(sorted(map(len, _cycles(last)), reverse=True)) != target_last:
                continue
            tup = (rep, *middle, last)
        if len(raw_orbits(tup, n)) != 1:
            continue
        fixed_count += 1
        canon, _ = canonical_labelings(tup, n)
        seen.add(canon)
    classes = tuple(
        Constellation(n, tuple(BranchPoint(pos, Permutation(p)) for pos, p in zip(positions, canon)))
        for canon in sorted(seen)
    )
    return Enumeration(n, types, classes, fixed_count * len(first_class))


def hurwitz_number(n: int, cycle_types: Sequence[Sequence[int]]) -> Fraction:
    """Weighted count ``sum 1/|Aut|`` of connected coverings with the given branching."""
    return enumerate_coverings(n, cycle_types).hurwitz_number


def automorphism_count(c: Constellation) -> int:
    _, labelings = canonical_labelings([bp.monodromy.images for bp in c.branch_points], c.n)
    return len(labelings)
