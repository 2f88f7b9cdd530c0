import random

import pytest
from hypothesis import given, settings, strategies as st

from hurwitz.covering import euler_characteristic
from hurwitz.perm import Permutation, product
from hurwitz.polyalg import RationalMapClass
from hurwitz.trace import ResolutionFailure, bridge_check, critical_values_numeric, trace_monodromy
from hurwitz.verify import random_rational_map

Z2 = RationalMapClass.from_affine([0, 0, 1])
CUBIC = RationalMapClass.from_affine([0, -3, 0, 1])


def as_dict(values):
    return {("inf" if cv.value is None else complex(round(cv.value.real, 8), round(cv.value.imag, 8))): cv.multiplicity
            for cv in values}


def test_critical_values_examples():
    assert as_dict(critical_values_numeric(Z2)) == {0j: 1, "inf": 1}
    assert as_dict(critical_values_numeric(CUBIC)) == {-2 + 0j: 1, 2 + 0j: 1, "inf": 2}
    assert critical_values_numeric(RationalMapClass.from_affine([0, 1])) == []


def test_resolution_failure():
    with pytest.raises(ResolutionFailure):
        critical_values_numeric(CUBIC, eps=1.0)
    with pytest.raises(ValueError):
        critical_values_numeric(CUBIC, eps=0)


def test_trace_z2():
    tm = trace_monodromy(Z2, 1e-8)
    t = Permutation.transposition(2, 0, 1)
    assert list(tm.loop_permutations.perms) == [t, t]


def test_trace_cubic():
    tm = trace_monodromy(CUBIC, 1e-8)
    by_value = {("inf" if cv.value is None else round(cv.value.real)): p
                for cv, p in zip(tm.critical_values, tm.loop_permutations.perms)}
    assert by_value[-2].is_transposition() and by_value[2].is_transposition()
    assert by_value["inf"].cycle_type() == (3,)
    assert product(tm.loop_permutations.perms, 3).is_identity()
    assert euler_characteristic(tm.constellation()) == 2


def test_trace_moebius():
    m = RationalMapClass.from_affine([1, 2], [3, 1])
    assert trace_monodromy(m).loop_permutations.perms == ()


def test_bridge_examples():
    assert bridge_check(Z2, 1e-8).ok
    assert bridge_check(CUBIC, 1e-8).ok


def test_output_is_deterministic():
    a = trace_monodromy(CUBIC, 1e-8)
    b = trace_monodromy(CUBIC, 1e-8)
    assert a == b


@given(st.integers(0, 2**32 - 1), st.integers(2, 4))
@settings(max_examples=15)
def test_riemann_hurwitz_on_traced(seed, n):
    m = random_rational_map(random.Random(seed), n)
    try:
        tm = trace_monodromy(m, 1e-8)
    except ResolutionFailure:
        return
    perms = tm.loop_permutations.perms
    assert product(perms, n).is_identity()
    assert sum(n - p.num_cycles for p in perms) == 2 * n - 2
    for cv, p in zip(tm.critical_values, perms):
        assert n - p.num_cycles == cv.multiplicity
