import io
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from hurwitz import cli
from hurwitz.boundary import BoundaryClass
from hurwitz.covering import Constellation, enumerate_coverings
from hurwitz.documents import DocumentError, decode, dump_value, dumps, load_value, parse
from hurwitz.polyalg import RationalMapClass, SpherePoint
from hurwitz.space import BranchDivisor, nu
from hurwitz.verify import random_boundary, random_rational_map


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def corpus():
    out = [enumerate_coverings(3, [[2]] * 4).classes[0], BranchDivisor.of({"a": 2, "b": 1}),
           RationalMapClass.from_affine([0, -3, 0, 1]),
           BranchDivisor.of([(SpherePoint.affine_point(2), 1), (SpherePoint.infinity(), 2)])]
    rng = random.Random(3)
    for n in range(1, 5):
        counter = iter(range(10**6))
        b = random_boundary(rng, n, 0, lambda: f"p{next(counter)}")
        out += [b, nu(b)]
    return out


@pytest.mark.parametrize("value", corpus(), ids=lambda v: type(v).__name__)
def test_roundtrip(value):
    text = dump_value(value)
    assert dumps(parse(text)) == text
    assert dump_value(load_value(text)) == text


@given(st.integers(0, 2**32 - 1), st.integers(1, 5), st.integers(0, 1))
@settings(max_examples=30)
def test_roundtrip_random_boundaries(seed, n, genus):
    counter = iter(range(10**6))
    b = random_boundary(random.Random(seed), n, genus, lambda: f"p{next(counter)}")
    assert load_value(dump_value(b)) == b


@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
@settings(max_examples=30)
def test_roundtrip_random_maps(seed, n):
    m = random_rational_map(random.Random(seed), n)
    assert load_value(dump_value(m)) == m


def constellation_doc(perms):
    return json.dumps({"kind": "constellation", "version": "1", "payload": {
        "n": len(perms[0]), "branch_points": [{"position": f"b{i}", "monodromy": p} for i, p in enumerate(perms)]}})


def test_product_violation_named():
    with pytest.raises(DocumentError, match="product"):
        parse(constellation_doc([[1, 0, 2], [0, 2, 1]]))


def test_connectivity_violation_named():
    doc = {"kind": "boundary", "version": "1", "payload": {"n": 3, "fibers": [
        {"position": "a", "monodromy": [1, 0, 2], "singular_points": []},
        {"position": "b", "monodromy": [1, 0, 2], "singular_points": []}]}}
    with pytest.raises(DocumentError, match="disconnected"):
        parse(json.dumps(doc))


def test_unknown_field_rejected():
    doc = json.loads(constellation_doc([[1, 0], [1, 0]]))
    doc["payload"]["extra"] = 1
    with pytest.raises(DocumentError, match="extra"):
        parse(json.dumps(doc))
    doc = json.loads(constellation_doc([[1, 0], [1, 0]]))
    doc["payload"]["branch_points"][0]["monodromy"] = "x"
    with pytest.raises(DocumentError, match="branch_points/0/monodromy"):
        parse(json.dumps(doc))


def test_syntax_error_has_position():
    with pytest.raises(DocumentError, match="line 1"):
        parse('{"kind": }')


def test_wrong_version():
    doc = json.loads(constellation_doc([[1, 0], [1, 0]]))
    doc["version"] = "2"
    with pytest.raises(DocumentError):
        parse(json.dumps(doc))


def test_cli_fiber_node(capsys, fixtures_dir):
    code, out, _ = run(capsys, "fiber", "--divisor", "{a:2}", "--n", "2", "--chi", "2")
    assert code == 0
    report = load_value(out)
    assert report.ok and len(report.items) == 1
    assert dumps(report.items[0]) == (fixtures_dir / "node.json").read_text()


def test_cli_rational_ll(capsys):
    code, out, _ = run(capsys, "rational-ll", "--map", "z^2")
    assert code == 0
    coeffs = json.loads(out)["payload"]["data"]["coefficients"]
    assert [c["re"] for c in coeffs] == ["0", "4", "0"]


def test_cli_verify_conservation(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "conservation", "--n", "4", "--trials", "500")
    assert code == 0
    assert json.loads(out)["payload"]["lines"][0].startswith("PASS conservation: 500 checked")


def test_cli_exit_codes(capsys, monkeypatch):
    code, _, err = run(capsys, "ll", "-", stdin=constellation_doc([[1, 0]]), monkeypatch=monkeypatch)
    assert code == 1 and "product" in err
    code, _, _ = run(capsys, "fiber", "--divisor", "{a:2}", "--n", "1", "--chi", "0")
    assert code == 1
    code, _, _ = run(capsys, "verify", "--suite", "nope")
    assert code == 1
    monkeypatch.setenv("HURWITZ_MAX_N", "2")
    code, _, err = run(capsys, "hurwitz-count", "--n", "3", "--types", "[[2],[2],[2],[2]]")
    assert code == 1 and "HURWITZ_MAX_N" in err


def test_cli_pipeline(capsys, monkeypatch, tmp_path):
    code, out, _ = run(capsys, "enumerate", "--n", "3", "--types", "[[2],[2],[2],[2]]")
    assert code == 0
    report = load_value(out)
    assert report.data["classes"] == 4 and report.data["hurwitz_number"] == "4"
    src = tmp_path / "c.json"
    src.write_text(dumps(report.items[0]))
    code, out, err = run(capsys, "degenerate", str(src), "--partition", "[[0,2],[1],[3]]")
    assert code == 0 and "moves" in err
    merged = load_value(out)
    assert isinstance(merged, BoundaryClass)
    code, dec, _ = run(capsys, "nu", "-", stdin=out, monkeypatch=monkeypatch)
    assert code == 0
    code, div, _ = run(capsys, "q", "-", stdin=dec, monkeypatch=monkeypatch)
    code2, div2, _ = run(capsys, "ll", "-", stdin=out, monkeypatch=monkeypatch)
    assert div == div2
    code, back, _ = run(capsys, "nu-inverse", "-", stdin=dec, monkeypatch=monkeypatch)
    assert load_value(back) == merged.canonical()
    code, simple, _ = run(capsys, "perturb", "-", "--all", stdin=out, monkeypatch=monkeypatch)
    assert code == 0 and load_value(simple).is_simple


def test_cli_trace_and_bridge(capsys):
    code, out, _ = run(capsys, "trace", "--map", "z^3 - 3z")
    assert code == 0
    data = json.loads(out)["payload"]["data"]
    assert sorted(cv["multiplicity"] for cv in data["critical_values"]) == [1, 1, 2]
    assert isinstance(decode(load_value(out).items[0]), Constellation)
    code, _, _ = run(capsys, "bridge-check", "--map", "z^3 - 3z", "--eps", "1e-8")
    assert code == 0


def test_cli_rejects_inexact_map(capsys):
    code, _, err = run(capsys, "rational-ll", "--map", "sqrt(2)*z^2")
    assert code == 1 and "exact" in err


@pytest.mark.parametrize("argv", [
    ["fiber", "--divisor", "{a:2,b:1,c:1}", "--n", "3", "--chi", "2"],
    ["trace", "--map", "(z^2+1)/(2z)"],
    ["hurwitz-count", "--n", "4", "--types", "[[2],[2],[2],[2],[2],[2]]"],
])
def test_cli_deterministic_and_parseable(capsys, argv):
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert dumps(parse(first)) == first
