"""Property suites shared by the test-suite and ``hurwitz verify``.

Each suite returns a :class:`SuiteResult`; ``lines()`` gives one
machine-readable ``PASS``/``FAIL`` line followed by any failure details.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .boundary import (
    BoundaryClass,
    CriticalFiberDatum,
    SingularPointDatum,
    chi_source,
    degenerate_audited,
    merge_fibers,
    perturb_all,
    perturb_general,
    perturb_simple,
    simple_factorization,
)
from .braids import hurwitz_move
from .perm import Permutation
from .polyalg import (
    GaussianRational,
    HomogeneousPolynomial,
    MoebiusTransform,
    NotCoprime,
    RationalMapClass,
    ll_hom,
    ll_invariance_check,
    ll_polynomial_affine,
    projectively_equal,
)


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    elapsed: float = 0.0
    note: str = ""

    @property
    def ok(self) -> bool:
        return not self.failures and self.checked > 0

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def lines(self) -> list[str]:
        status = "PASS" if self.ok else "FAIL"
        head = f"{status} {self.name}: {self.checked} checked, {len(self.failures)} failed, {self.elapsed:.1f}s"
        if self.note:
            head += f" ({self.note})"
        return [head] + [f"  {m}" for m in self.failures[:20]]


def _timed(name: str, body: Callable[[SuiteResult], None]) -> SuiteResult:
    res = SuiteResult(name)
    start = time.perf_counter()
    body(res)
    res.elapsed = time.perf_counter() - start
    return res


# -- random data ---------------------------------------------------------------------


class _Names:
    def __init__(self) -> None:
        self.k = 0

    def __call__(self) -> str:
        self.k += 1
        return f"p{self.k}"


def random_simple(rng: random.Random, n: int, genus: int, names: Callable[[], str] | None = None) -> BoundaryClass:
    """A random simple covering: a standard one scrambled by braid moves and a relabelling."""
    names = names or _Names()
    perms = []
    for i in range(n - 1):
        t = Permutation.transposition(n, i, i + 1)
        perms += [t, t]
    if n > 1:
        perms += [Permutation.transposition(n, 0, 1)] * (2 * genus)
    for _ in range(6 * len(perms)):
        if len(perms) < 2:
            break
        i = rng.randrange(len(perms) - 1)
        if rng.random() < 0.5:
            perms = hurwitz_move(perms, i)
        else:
            # inverse move
            a, b = perms[i], perms[i + 1]
            perms[i:i + 2] = [b, b.inverse() * a * b]
    g = list(range(n))
    rng.shuffle(g)
    g = Permutation(tuple(g))
    return BoundaryClass(n, tuple(CriticalFiberDatum(names(), p.conjugate_by(g)) for p in perms))


def random_partition(rng: random.Random, k: int, contiguous: bool) -> list[list[int]]:
    if k == 0:
        return []
    if contiguous:
        cuts = sorted(rng.sample(range(1, k), rng.randint(0, k - 1))) if k > 1 else []
        bounds = [0] + cuts + [k]
        return [list(range(a, b)) for a, b in zip(bounds, bounds[1:])]
    classes = rng.randint(1, k)
    labels = [rng.randrange(classes) for _ in range(k)]
    out: dict[int, list[int]] = {}
    for i, lab in enumerate(labels):
        out.setdefault(lab, []).append(i)
    return list(out.values())


def random_local_config(rng: random.Random, point: SingularPointDatum, n: int, names: Callable[[], str],
                        at: object | None = None) -> list[CriticalFiberDatum]:
    """A random perturbation of ``point``: its simple factorization, scrambled, then partly re-merged."""
    fac = simple_factorization(point, n)
    for _ in range(3 * len(fac)):
        if len(fac) > 1:
            fac = hurwitz_move(fac, rng.randrange(len(fac) - 1))
    chunks = random_partition(rng, len(fac), contiguous=True)
    local = []
    for j, chunk in enumerate(chunks):
        pos = at if (at is not None and j == len(chunks) - 1) else names()
        fibers = [CriticalFiberDatum(f"_{i}", fac[i]) for i in chunk]
        local.append(merge_fibers(fibers, pos, n))
    return local


def random_boundary(rng: random.Random, n: int, genus: int, names: Callable[[], str]) -> BoundaryClass:
    b = random_simple(rng, n, genus, names)
    part = random_partition(rng, len(b.fibers), contiguous=rng.random() < 0.5)
    return degenerate_audited(b, part, [names() for _ in part]).boundary


def _random_gr(rng: random.Random, size: int = 5, gaussian: bool = True) -> GaussianRational:
    re = Fraction(rng.randint(-size, size), rng.randint(1, 3))
    im = Fraction(rng.randint(-size, size), rng.randint(1, 3)) if gaussian and rng.random() < 0.5 else Fraction(0)
    return GaussianRational(re, im)


def random_rational_map(rng: random.Random, n: int, gaussian: bool = True) -> RationalMapClass:
    while True:
        P = HomogeneousPolynomial.of([_random_gr(rng, gaussian=gaussian) for _ in range(n + 1)])
        Q = HomogeneousPolynomial.of([_random_gr(rng, gaussian=gaussian) for _ in range(n + 1)])
        try:
            return RationalMapClass(P, Q)
        except (NotCoprime, ValueError):
            continue


def random_moebius(rng: random.Random) -> MoebiusTransform:
    while True:
        try:
            return MoebiusTransform(*[_random_gr(rng) for _ in range(4)])
        except ValueError:
            continue


# -- suites -------------------------------------------------------------------------------


def conservation(n_max: int = 6, trials: int = 500, seed: int = 0, steps: int = 4) -> SuiteResult:
    """Total multiplicity is unchanged by random degenerations and perturbations."""
    rng = random.Random(seed)

    def body(res: SuiteResult) -> None:
        for trial in range(trials):
            names = _Names()
            n = rng.randint(2, max(2, n_max))
            genus = rng.randint(0, 1)
            chi = 2 - 2 * genus
            b = random_simple(rng, n, genus, names)
            history = []
            for _ in range(steps):
                op = rng.choice(["degenerate", "perturb_simple", "perturb_general"])
                if op == "degenerate":
                    part = random_partition(rng, len(b.fibers), contiguous=rng.random() < 0.5)
                    b = degenerate_audited(b, part, [names() for _ in part]).boundary
                else:
                    fi = rng.randrange(len(b.fibers))
                    pts = b.fibers[fi].critical_points()
                    pi = rng.randrange(len(pts))
                    point = pts[pi]
                    if op == "perturb_simple":
                        b = perturb_simple(b, (fi, pi), [names() for _ in range(point.index - 1)])
                    else:
                        at = b.fibers[fi].position if rng.random() < 0.3 else None
                        b = perturb_general(b, (fi, pi), random_local_config(rng, point, n, names, at))
                history.append(op)
                total = b.total_multiplicity
                if total != 2 * n - chi or chi_source(b) != chi:
                    res.fail(f"trial {trial}: after {history} total multiplicity {total}, expected {2 * n - chi}")
                    break
            res.checked += 1

    return _timed("conservation", body)


def degeneration(n_max: int = 5, trials: int = 200, seed: int = 0) -> SuiteResult:
    """Each merged value's multiplicity is the sum of the merged multiplicities."""
    rng = random.Random(seed)

    def body(res: SuiteResult) -> None:
        for trial in range(trials):
            names = _Names()
            n = rng.randint(2, max(2, n_max))
            c = random_simple(rng, n, rng.randint(0, 1), names)
            # coarsen into a general nonsingular constellation when possible
            pre = degenerate_audited(c, random_partition(rng, len(c.fibers), True), None).boundary
            if pre.is_nonsingular:
                c = BoundaryClass(n, tuple(CriticalFiberDatum(names(), f.monodromy) for f in pre.fibers))
            part = random_partition(rng, len(c.fibers), contiguous=rng.random() < 0.3)
            out = degenerate_audited(c, part)
            classes = sorted((sorted(cls) for cls in part), key=lambda cls: cls[0])
            for cls, fiber in zip(classes, out.boundary.fibers):
                want = sum(c.fibers[i].multiplicity for i in cls)
                if fiber.multiplicity != want:
                    res.fail(f"trial {trial}: class {cls} merged to multiplicity {fiber.multiplicity}, expected {want}")
            res.checked += 1

    return _timed("degeneration", body)


def roundtrip(n_max: int = 5, trials: int = 200, seed: int = 0) -> SuiteResult:
    """Degenerating a full simple perturbation by original fibre gives back the class."""
    rng = random.Random(seed)

    def body(res: SuiteResult) -> None:
        for trial in range(trials):
            names = _Names()
            n = rng.randint(2, max(2, n_max))
            b = random_boundary(rng, n, rng.randint(0, 1), names)
            p, part = perturb_all(b)
            back = degenerate_audited(p, part, list(b.positions)).boundary
            if back.canonical() != b.canonical():
                res.fail(f"trial {trial}: roundtrip changed the class of {b}")
            res.checked += 1

    return _timed("roundtrip", body)


def singular_data(deg_max: int = 5, genus_max: int = 1, m_max: int = 3) -> list[SingularPointDatum]:
    """One singular point per (cycle lengths, genus) with the given bounds, on sheets ``0..deg-1``."""
    out = []
    for deg in range(1, deg_max + 1):
        for m in range(1, min(m_max, deg) + 1):
            for lengths in _partitions_into(deg, m):
                for g in range(genus_max + 1):
                    if m == 1 and deg == 1:
                        continue
                    cycles, s = [], 0
                    for ln in lengths:
                        cycles.append(tuple(range(s, s + ln)))
                        s += ln
                    out.append(SingularPointDatum(tuple(cycles), g))
    return out


def _partitions_into(total: int, parts: int, largest: int | None = None) -> list[tuple[int, ...]]:
    largest = total if largest is None else largest
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(min(total, largest), 0, -1):
        for rest in _partitions_into(total - first, parts - 1, first):
            out.append((first,) + rest)
    return out


def point_as_boundary(point: SingularPointDatum) -> BoundaryClass:
    """The point over ``v`` followed by the inverse of its monodromy, ordinary, over ``w``."""
    n = point.deg
    tau = point.sub_permutation(n)
    fibers = [CriticalFiberDatum("v", tau, (point,))]
    if not tau.is_identity():
        fibers.append(CriticalFiberDatum("w", tau.inverse()))
    return BoundaryClass(n, tuple(fibers))


def perturbation(deg_max: int = 5, genus_max: int = 1, m_max: int = 3) -> SuiteResult:
    """Simple perturbations of every small singular point form a single orbit."""
    from .space import perturbation_set

    def body(res: SuiteResult) -> None:
        for point in singular_data(deg_max, genus_max, m_max):
            got = perturbation_set(point_as_boundary(point))
            if len(got) != 1:
                res.fail(f"point {point.cycles} genus {point.genus}: {len(got)} perturbation classes")
            res.checked += 1

    return _timed("perturbation", body)


def fiber(n_max: int = 4, k_max: int = 6) -> SuiteResult:
    """LL fibres are nonempty and match the brute-force count."""
    from .oracles import brute_ll_fiber_count
    from .space import admissible_divisors, ll_fiber

    def body(res: SuiteResult) -> None:
        for n in range(1, n_max + 1):
            for d, chi in admissible_divisors(n, k_max):
                got = len(ll_fiber(d, n, chi))
                want = brute_ll_fiber_count(d.multiplicities, n)
                if got == 0 or got != want:
                    res.fail(f"n={n} multiplicities {list(d.multiplicities)}: {got} classes, oracle {want}")
                res.checked += 1

    return _timed("fiber", body)


def refinements(d) -> list:
    """Every refinement of ``d``: each value split into an ordered composition inside its disk."""
    from .space import BranchDivisor, _compositions
    per_entry = [list(_compositions(k)) for _, k in d.entries]
    out = []
    for choice in itertools.product(*per_entry):
        entries, disks = [], []
        for (pos, _), parts in zip(d.entries, choice):
            idx = []
            for j, k in enumerate(parts):
                idx.append(len(entries))
                entries.append((pos if len(parts) == 1 else f"{pos}.{j}", k))
            disks.append(idx)
        out.append((BranchDivisor(tuple(entries)), disks))
    return out


def partition(n_max: int = 3, k_max: int = 6) -> SuiteResult:
    """Perturbation neighbourhoods partition every refined LL fibre."""
    from .space import admissible_divisors, verify_partition

    def body(res: SuiteResult) -> None:
        for n in range(1, n_max + 1):
            for d, chi in admissible_divisors(n, k_max):
                for refined, disks in refinements(d):
                    rep = verify_partition(d, refined, disks, n, chi)
                    if not rep.ok:
                        res.fail(f"n={n} {list(d.multiplicities)} -> {list(refined.multiplicities)}: {rep.lines()[0]}")
                    res.checked += 1

    return _timed("partition", body)


def nu_correspondence(n_max: int = 4, k_max: int = 6) -> SuiteResult:
    """nu and nu_inverse are inverse bijections with q(nu(b)) = ll(b)."""
    from .space import admissible_divisors, decorated_classes, ll, ll_fiber, nu, nu_inverse, q

    def body(res: SuiteResult) -> None:
        for n in range(1, n_max + 1):
            for d, chi in admissible_divisors(n, k_max):
                fib = ll_fiber(d, n, chi)
                images = []
                for b in fib:
                    dc = nu(b)
                    images.append(dc)
                    if q(dc) != ll(b):
                        res.fail(f"q(nu(b)) = {q(dc).entries} but ll(b) = {ll(b).entries}")
                    if nu_inverse(dc) != b.canonical():
                        res.fail(f"nu_inverse(nu(b)) differs from b for {b}")
                    res.checked += 1
                targets = decorated_classes(d, n)
                if len(set(images)) != len(fib):
                    res.fail(f"n={n} {list(d.multiplicities)}: nu is not injective")
                if set(images) != set(targets):
                    res.fail(f"n={n} {list(d.multiplicities)}: nu hits {len(set(images))} of {len(targets)} decorated classes")
                for dc in targets:
                    if nu(nu_inverse(dc)) != dc:
                        res.fail(f"nu(nu_inverse(dc)) differs from dc for {dc.blocks}")

    return _timed("nu", body)


def ll_degree(trials: int = 200, n_max: int = 5, seed: int = 0) -> SuiteResult:
    """The LL form has degree exactly 2n - 2 and agrees with sympy's discriminant."""
    from .oracles import sympy_coeff_to_fraction, sympy_ll
    rng = random.Random(seed)

    def body(res: SuiteResult) -> None:
        for trial in range(trials):
            n = rng.randint(1, n_max)
            m = random_map_for(rng, n)
            h = ll_hom(m)
            if h.degree != 2 * n - 2 or h.is_zero:
                res.fail(f"trial {trial}: degree {h.degree} for n={n}")
            if trial % 10 == 0 and n > 1:
                theirs = [GaussianRational(*sympy_coeff_to_fraction(c)) for c in sympy_ll(m)]
                ours = list(ll_polynomial_affine(m).c)
                width = max(len(theirs), len(ours))
                pad = lambda v: v + [GaussianRational(0)] * (width - len(v))  # noqa: E731
                if not projectively_equal(pad(ours), pad(theirs)):
                    res.fail(f"trial {trial}: LL form differs from sympy for {m}")
            res.checked += 1

    return _timed("ll-degree", body)


def random_map_for(rng: random.Random, n: int) -> RationalMapClass:
    return random_rational_map(rng, n)


def invariance(trials: int = 100, n_max: int = 4, seed: int = 0) -> SuiteResult:
    """LL is invariant under the Moebius action, up to a scalar."""
    rng = random.Random(seed)

    def body(res: SuiteResult) -> None:
        for trial in range(trials):
            m = random_rational_map(rng, rng.randint(1, n_max))
            g = random_moebius(rng)
            if not ll_invariance_check(m, g):
                res.fail(f"trial {trial}: LL not invariant for {m} under {g}")
            res.checked += 1

    return _timed("invariance", body)


def bridge(trials: int = 20, seed: int = 0, eps: float = 1e-8) -> SuiteResult:
    """Traced monodromy reproduces the critical values and multiplicities."""
    from .trace import bridge_check
    rng = random.Random(seed)

    def body(res: SuiteResult) -> None:
        maps = [RationalMapClass.from_affine([0, 0, 1]), RationalMapClass.from_affine([0, -3, 0, 1])]
        maps += [random_rational_map(rng, 3, gaussian=False) for _ in range(trials)]
        for m in maps:
            rep = bridge_check(m, eps)
            if not rep.ok:
                res.fail(f"{m}: {' | '.join(rep.lines())}")
            res.checked += 1

    return _timed("bridge", body)


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "conservation": conservation,
    "degeneration": degeneration,
    "roundtrip": roundtrip,
    "perturbation": perturbation,
    "fiber": fiber,
    "partition": partition,
    "nu": nu_correspondence,
    "ll-degree": ll_degree,
    "invariance": invariance,
    "bridge": bridge,
}
