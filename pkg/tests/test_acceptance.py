"""Acceptance criteria, each at its stated size, tolerance and time budget.

Every test prints (and records for the terminal summary) one line
``PASS|FAIL <n> <name>: ...``.  Run standalone with ``python tests/test_acceptance.py``.
"""
import json
import pathlib
import time
from fractions import Fraction

import pytest

from hurwitz import verify
from hurwitz.documents import dumps, encode, load_value
from hurwitz.polyalg import GaussianRational, HomogeneousPolynomial, RationalMapClass, ll_hom, projectively_equal
from hurwitz.space import BranchDivisor, ll_fiber
from hurwitz.trace import critical_values_numeric, trace_monodromy

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
_LOG: list[str] = []


def _record(log, number, result, budget):
    ok = result.ok and result.elapsed < budget
    head = result.lines()[0].split(" ", 1)[1]
    line = f"{'PASS' if ok else 'FAIL'} {number} {head} (budget {budget:.0f}s)"
    print(line)
    log.append(line)
    return ok, result


@pytest.fixture
def log(acceptance_log):
    return acceptance_log


def test_1_conservation(log):
    ok, res = _record(log, 1, verify.conservation(n_max=6, trials=500), 60)
    assert res.checked == 500
    assert ok, res.lines()


def test_2_degeneration_multiplicities(log):
    ok, res = _record(log, 2, verify.degeneration(n_max=5, trials=200), 60)
    assert res.checked == 200
    assert ok, res.lines()


def test_3_perturbation_uniqueness(log):
    ok, res = _record(log, 3, verify.perturbation(deg_max=5, genus_max=1, m_max=3), 300)
    assert ok, res.lines()


def test_4_fiber_counts(log):
    ok, res = _record(log, 4, verify.fiber(n_max=4, k_max=6), 600)
    assert ok, res.lines()


def test_5_partition(log):
    ok, res = _record(log, 5, verify.partition(n_max=3, k_max=6), 600)
    assert ok, res.lines()


def test_6_nu_correspondence(log):
    ok, res = _record(log, 6, verify.nu_correspondence(n_max=4, k_max=6), 600)
    assert ok, res.lines()


def test_7_ll_degree(log):
    ok, res = _record(log, 7, verify.ll_degree(trials=200, n_max=5), 60)
    assert res.checked == 200
    assert ok, res.lines()


def test_8_invariance(log):
    ok, res = _record(log, 8, verify.invariance(trials=100, n_max=4), 120)
    assert res.checked == 100
    assert ok, res.lines()


def test_9_bridge(log):
    start = time.perf_counter()
    res = verify.bridge(trials=20, eps=1e-8)
    # traced monodromy must also assemble into a valid constellation (identity product, transitive)
    for m in (RationalMapClass.from_affine([0, 0, 1]), RationalMapClass.from_affine([0, -3, 0, 1])):
        c = trace_monodromy(m, 1e-8).constellation()
        if sum(bp.monodromy.n - bp.monodromy.num_cycles for bp in c.branch_points) != 2 * m.n - 2:
            res.fail(f"{m}: traced monodromy has the wrong total multiplicity")
    res.elapsed = time.perf_counter() - start
    ok, res = _record(log, 9, res, 120)
    assert res.checked == 22
    assert ok, res.lines()


def _fixture_checks() -> verify.SuiteResult:
    res = verify.SuiteResult("fixtures")

    # the node: the only class over a single double value at n = 2
    node_text = (FIXTURES / "node.json").read_text()
    got = ll_fiber(BranchDivisor.of({"a": 2}), 2, 2)
    if len(got) != 1 or dumps(encode(got[0])) != node_text or got[0] != load_value(node_text):
        res.fail(f"fiber of {{a: 2}} at n=2 is {got}")
    res.checked += 1

    # LL form of z^2 against the frozen sympy discriminant; proportional to t0*t1
    frozen = json.loads((FIXTURES / "ll_z2.json").read_text())["coefficients"]
    want = [GaussianRational(Fraction(re), Fraction(im)) for re, im in frozen]
    h = ll_hom(RationalMapClass.from_affine([0, 0, 1]))
    if not projectively_equal(h.coeffs, want) or not projectively_equal(h.coeffs, (0, 1, 0)):
        res.fail(f"ll_hom(z^2) = {h}")
    res.checked += 1

    # z^3 - 3z: exact form is the product of the frozen linear factors, numeric values agree
    entries = json.loads((FIXTURES / "divisor_z3.json").read_text())["entries"]
    m = RationalMapClass.from_affine([0, -3, 0, 1])
    prod = HomogeneousPolynomial.of([1])
    for value, k in entries:
        lin = HomogeneousPolynomial.of([1, 0]) if value == "inf" else HomogeneousPolynomial.of([-Fraction(value), 1])
        for _ in range(k):
            prod = prod * lin
    if not projectively_equal(ll_hom(m).coeffs, prod.coeffs):
        res.fail(f"ll_hom(z^3 - 3z) = {ll_hom(m)} is not proportional to {prod}")
    res.checked += 1
    def fmt(v):
        return "inf" if v is None else f"{v.real + 0.0:.8f}{v.imag + 0.0:+.8f}j"
    numeric = sorted((fmt(cv.value), cv.multiplicity) for cv in critical_values_numeric(m, 1e-8))
    frozen_num = sorted((fmt(None if v == "inf" else complex(float(Fraction(v)))), k) for v, k in entries)
    if numeric != frozen_num:
        res.fail(f"numeric critical values {numeric} differ from {frozen_num}")
    res.checked += 1
    return res


def test_10_worked_fixtures(log):
    start = time.perf_counter()
    res = _fixture_checks()
    res.elapsed = time.perf_counter() - start
    ok, res = _record(log, 10, res, 60)
    assert ok, res.lines()


if __name__ == "__main__":
    import sys
    tests = [v for k, v in sorted(globals().items(), key=lambda kv: int(kv[0].split("_")[1]) if kv[0].startswith("test_") else 0)
             if k.startswith("test_")]
    failed = 0
    for t in tests:
        try:
            t(_LOG)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
