import pytest

from hurwitz.boundary import BoundaryClass, CriticalFiberDatum, SingularPointDatum
from hurwitz.braids import OrbitTooLarge
from hurwitz.covering import Constellation
from hurwitz.oracles import brute_ll_fiber_count
from hurwitz.perm import Permutation
from hurwitz.space import (
    Block,
    BranchDivisor,
    DecoratedClass,
    DiskGrouping,
    Verdict,
    admissible_divisors,
    decorated_classes,
    is_admissible,
    ll,
    ll_fiber,
    nu,
    nu_inverse,
    perturbation_set,
    q,
    simple_refinement,
    ve_equivalent,
    verify_partition,
)
from hurwitz.verify import point_as_boundary

ID2 = Permutation.identity(2)
T2 = Permutation.transposition(2, 0, 1)
NODE = BoundaryClass(2, (CriticalFiberDatum("a", ID2, (SingularPointDatum(((0,), (1,)), 0),)),))


def t(n, a, b):
    return Permutation.transposition(n, a, b)


def simple(n, perms, positions=None):
    return BoundaryClass.from_constellation(Constellation.from_perms(n, perms, positions))


def test_ll_examples():
    assert ll(simple(2, [T2, T2], ["a", "b"])) == BranchDivisor.of({"a": 1, "b": 1})
    assert ll(NODE) == BranchDivisor.of({"a": 2})


def test_ll_conjugation_invariant():
    b = simple(3, [t(3, 0, 1), t(3, 1, 2), t(3, 1, 2), t(3, 0, 1)])
    assert ll(b.relabelled((2, 0, 1))) == ll(b)


def test_divisor_validation():
    with pytest.raises(ValueError):
        BranchDivisor.of([("a", 1), ("a", 1)])
    with pytest.raises(ValueError):
        BranchDivisor.of({"a": 0})


def test_fiber_examples():
    assert ll_fiber(BranchDivisor.of({"a": 1, "b": 1}), 2, 2) == [simple(2, [T2, T2], ["a", "b"]).canonical()]
    assert ll_fiber(BranchDivisor.of({"a": 2}), 2, 2) == [NODE]
    d = BranchDivisor.of({"a": 2, "b": 1, "c": 1})
    assert len(ll_fiber(d, 3, 2)) == brute_ll_fiber_count(d.multiplicities, 3)


def test_fiber_total_mismatch():
    with pytest.raises(ValueError):
        ll_fiber(BranchDivisor.of({"a": 3}), 2, 2)


def test_admissibility():
    assert is_admissible(1, 2, 0)
    assert not is_admissible(1, 0, 2)
    assert not is_admissible(2, 1, 3)
    assert {chi for _, chi in admissible_divisors(3, 6)} == {2, 0}


@pytest.mark.parametrize("n,k_max", [(2, 4), (3, 4)])
def test_fibers_nonempty_and_match_oracle(n, k_max):
    for d, chi in admissible_divisors(n, k_max, compositions=False):
        got = ll_fiber(d, n, chi)
        assert got, d
        assert len(got) == brute_ll_fiber_count(d.multiplicities, n)
        for b in got:
            assert ll(b) == d


def test_ve_examples():
    g = DiskGrouping.single(2)
    a = [t(3, 0, 1), t(3, 1, 2)]
    assert ve_equivalent(a, a, g) is Verdict.EQUIVALENT
    assert ve_equivalent(a, [t(3, 0, 2), t(3, 0, 1)], g) is Verdict.EQUIVALENT
    assert ve_equivalent([t(3, 0, 1), t(3, 0, 1)], a, g) is Verdict.INEQUIVALENT


def test_ve_undecided_when_capped():
    word = [t(4, a, b) for a, b in [(0, 1), (1, 2), (2, 3), (2, 3), (1, 2), (0, 1)]]
    assert ve_equivalent(word, list(reversed(word)), DiskGrouping.single(6), max_orbit=5) is Verdict.UNDECIDED


def test_perturbation_set_examples():
    out = perturbation_set(NODE)
    assert len(out) == 1
    assert [p for p in out[0].simple_fibers] == [T2, T2]
    c3 = Permutation.from_cycles(3, [(0, 1, 2)])
    three = BoundaryClass(3, (CriticalFiberDatum("v", c3), CriticalFiberDatum("w", c3.inverse())))
    assert len(perturbation_set(three)) == 1
    b = simple(2, [T2, T2])
    (only,) = perturbation_set(b)
    assert not any(blk.decorated for blk in only.blocks)


def test_perturbation_set_genus_one_point():
    point = SingularPointDatum(((0, 1), (2,)), 1)
    assert len(perturbation_set(point_as_boundary(point))) == 1


def test_perturbation_set_rejects_other_resolutions():
    with pytest.raises(ValueError):
        perturbation_set(NODE, "general")


def test_nu_examples():
    dc = nu(NODE)
    assert dc.labels == ("a",)
    assert dc.blocks[0].transpositions == (T2, T2)
    b = simple(2, [T2, T2], ["a", "b"])
    assert nu(b).labels == ()
    assert nu_inverse(nu(b)) == b.canonical()


def test_nu_inverse_examples():
    dc = DecoratedClass(2, (Block("a", True, (T2, T2)),))
    assert nu_inverse(dc) == NODE
    dc3 = DecoratedClass(3, (Block("e", True, (t(3, 0, 1), t(3, 1, 2))), Block("w", False, (t(3, 0, 1),)),
                             Block("x", False, (t(3, 0, 2),))))
    f = nu_inverse(dc3).fibers
    e = next(x for x in f if x.position == "e")
    assert e.monodromy.cycle_type() == (3,) and e.singular_points == ()


def test_q_examples():
    assert q(nu(NODE)) == BranchDivisor.of({"a": 2})
    b = simple(2, [T2, T2], ["a", "b"])
    assert q(nu(b)) == BranchDivisor.of({"a": 1, "b": 1})


@pytest.mark.parametrize("n,k_max", [(2, 4), (3, 4)])
def test_nu_bijective_on_fibers(n, k_max):
    for d, chi in admissible_divisors(n, k_max):
        fib = ll_fiber(d, n, chi)
        images = [nu(b) for b in fib]
        assert len(set(images)) == len(fib)
        assert set(images) == set(decorated_classes(d, n))
        for b, dc in zip(fib, images):
            assert q(dc) == ll(b)
            assert nu_inverse(dc) == b


def test_decorated_equality_uses_orbit():
    a = DecoratedClass(3, (Block("e", True, (t(3, 0, 1), t(3, 1, 2))), Block("w", False, (t(3, 0, 1),)),
                           Block("x", False, (t(3, 0, 2),))))
    b = DecoratedClass(3, (Block("e", True, (t(3, 0, 2), t(3, 0, 1))), Block("w", False, (t(3, 0, 1),)),
                           Block("x", False, (t(3, 0, 2),))))
    assert a == b and hash(a) == hash(b)
    assert a.representative() == a


def test_decorated_orbit_cap():
    word = [t(4, a, b) for a, b in [(0, 1), (1, 2), (2, 3), (2, 3), (1, 2), (0, 1)]]
    dc = DecoratedClass(4, (Block("e", True, tuple(word)),), max_orbit=5)
    with pytest.raises(OrbitTooLarge):
        dc.orbit_key


def test_partition_examples():
    d = BranchDivisor.of({"a": 2})
    refined, disks = simple_refinement(d)
    rep = verify_partition(d, refined, disks, 2, 2)
    assert rep.ok and rep.coarse_count == 1 and rep.fine_count == 1
    d = BranchDivisor.of({"a": 1, "b": 1})
    refined, disks = simple_refinement(d)
    assert refined == d and verify_partition(d, refined, disks, 2, 2).ok
    d = BranchDivisor.of({"a": 2, "b": 2})
    refined, disks = simple_refinement(d)
    rep = verify_partition(d, refined, disks, 3, 2)
    assert rep.ok and rep.missing == 0 and rep.overlaps == 0
