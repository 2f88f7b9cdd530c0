"""Command-line interface.  Every command prints one JSON document.

Exit status: 0 on success, 1 on invalid input, 2 when a checked property fails.
"""
from __future__ import annotations

import argparse
import inspect
import json
import re
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import config
from .boundary import BoundaryClass, degenerate_audited, perturb_all, perturb_simple
from .braids import OrbitTooLarge
from .covering import Constellation, enumerate_coverings
from .documents import DocumentError, Report, dumps, encode, load_value
from .polyalg import GaussianRational, RationalMapClass, ll_hom
from .space import BranchDivisor, DecoratedClass, is_admissible, ll, ll_fiber, nu, nu_inverse, q

EXIT_OK, EXIT_INVALID, EXIT_FALSIFIED = 0, 1, 2


class UsageError(ValueError):
    pass


# -- argument parsing helpers ---------------------------------------------------------


def parse_divisor(text: str) -> BranchDivisor:
    """``{a:2,b:1}`` shorthand, a JSON object, or a JSON list of ``[label, multiplicity]`` pairs."""
    text = text.strip()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError:
        m = re.fullmatch(r"\{(.*)\}", text, re.S)
        if not m:
            raise UsageError(f"cannot read divisor {text!r}") from None
        raw = {}
        for item in filter(None, (s.strip() for s in m.group(1).split(","))):
            label, _, mult = item.partition(":")
            if not mult.strip().isdigit():
                raise UsageError(f"bad divisor entry {item!r}")
            raw[label.strip().strip("'\"")] = int(mult)
    items = raw.items() if isinstance(raw, dict) else raw
    return BranchDivisor(tuple((str(p), int(k)) for p, k in items))


def _sym_to_gauss(c: Any) -> GaussianRational:
    import sympy
    re_, im_ = sympy.re(c), sympy.im(c)
    if not (re_.is_Rational and im_.is_Rational):
        raise UsageError(f"coefficient {c} is not an exact Gaussian rational")
    return GaussianRational(Fraction(int(re_.p), int(re_.q)), Fraction(int(im_.p), int(im_.q)))


def parse_map(text: str) -> RationalMapClass:
    """A rational function of ``z`` with exact coefficients, e.g. ``z^3 - 3*z`` or ``(z^2+1)/(2*z)``."""
    import sympy
    from sympy.parsing.sympy_parser import (
        convert_xor,
        implicit_multiplication_application,
        parse_expr,
        standard_transformations,
    )
    z = sympy.Symbol("z")
    try:
        expr = parse_expr(text, local_dict={"z": z, "i": sympy.I, "I": sympy.I},
                          transformations=standard_transformations + (convert_xor, implicit_multiplication_application))
    except Exception as exc:  # sympy raises assorted exception types
        raise UsageError(f"cannot parse map {text!r}: {exc}") from None
    num, den = sympy.fraction(sympy.together(sympy.nsimplify(expr, rational=True)))
    try:
        pn, pd = sympy.Poly(num, z), sympy.Poly(den, z)
    except sympy.PolynomialError as exc:
        raise UsageError(f"{text!r} is not a rational function of z: {exc}") from None
    numc = [_sym_to_gauss(c) for c in reversed(pn.all_coeffs())]
    denc = [_sym_to_gauss(c) for c in reversed(pd.all_coeffs())]
    return RationalMapClass.from_affine(numc, denc)


def _read_input(path: str | None) -> Any:
    if path in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return load_value(text)


def _json_arg(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--{what}: {exc}") from None


def _boundary(value: Any) -> BoundaryClass:
    if isinstance(value, Constellation):
        return BoundaryClass.from_constellation(value)
    if isinstance(value, BoundaryClass):
        return value
    raise UsageError("expected a constellation or boundary document")


def _decorated(value: Any) -> DecoratedClass:
    if not isinstance(value, DecoratedClass):
        raise UsageError("expected a decorated document")
    return value


def _num(x: float) -> float:
    return float(f"{x:.12g}")


# -- commands ----------------------------------------------------------------------------


def cmd_enumerate(args) -> tuple[Any, int]:
    types = _json_arg(args.types, "types")
    res = enumerate_coverings(args.n, types)
    data = {"classes": len(res.classes), "tuple_count": res.tuple_count, "hurwitz_number": str(res.hurwitz_number)}
    return Report("enumerate", True, (f"{len(res.classes)} classes",), res.classes, data), EXIT_OK


def cmd_hurwitz_count(args) -> tuple[Any, int]:
    types = _json_arg(args.types, "types")
    res = enumerate_coverings(args.n, types)
    data = {"classes": len(res.classes), "tuple_count": res.tuple_count, "hurwitz_number": str(res.hurwitz_number)}
    return Report("hurwitz-count", True, (f"hurwitz number {res.hurwitz_number}",), (), data), EXIT_OK


def cmd_ll(args) -> tuple[Any, int]:
    return ll(_boundary(_read_input(args.input))), EXIT_OK


def cmd_fiber(args) -> tuple[Any, int]:
    if args.divisor is None or args.n is None or args.chi is None:
        raise UsageError("fiber needs --divisor, --n and --chi")
    d = parse_divisor(args.divisor)
    if not is_admissible(args.n, args.chi, d.total):
        raise UsageError(f"no degree {args.n} surface with chi = {args.chi} has a divisor of total {d.total}")
    classes = ll_fiber(d, args.n, args.chi)
    ok = bool(classes)
    lines = (f"{len(classes)} classes",) if ok else ("empty fibre",)
    return Report("fiber", ok, lines, tuple(classes)), EXIT_OK if ok else EXIT_FALSIFIED


def cmd_degenerate(args) -> tuple[Any, int]:
    b = _boundary(_read_input(args.input))
    partition = _json_arg(args.partition, "partition")
    positions = _json_arg(args.positions, "positions") if args.positions else None
    out = degenerate_audited(b, partition, positions)
    if out.moves:
        print(f"braid moves applied before merging: {list(out.moves)}", file=sys.stderr)
    return out.boundary, EXIT_OK


def cmd_perturb(args) -> tuple[Any, int]:
    b = _boundary(_read_input(args.input))
    if args.all:
        return perturb_all(b)[0], EXIT_OK
    if args.point is None:
        raise UsageError("perturb needs --point FIBER,POINT or --all")
    fi, pi = (int(x) for x in args.point.split(","))
    if args.positions:
        positions = _json_arg(args.positions, "positions")
    else:
        from .boundary import _point, fresh_labels
        _, point = _point(b, (fi, pi))
        positions = fresh_labels(b.fibers[fi].position, point.index - 1, b.positions)
    return perturb_simple(b, (fi, pi), positions), EXIT_OK


def cmd_nu(args) -> tuple[Any, int]:
    return nu(_boundary(_read_input(args.input)), max_orbit=args.max_orbit), EXIT_OK


def cmd_nu_inverse(args) -> tuple[Any, int]:
    return nu_inverse(_decorated(_read_input(args.input))), EXIT_OK


def cmd_q(args) -> tuple[Any, int]:
    return q(_decorated(_read_input(args.input))), EXIT_OK


def _need_map(args) -> RationalMapClass:
    if args.map:
        return parse_map(args.map)
    value = _read_input(args.input)
    if not isinstance(value, RationalMapClass):
        raise UsageError("expected --map or a rationalmap document")
    return value


def cmd_rational_ll(args) -> tuple[Any, int]:
    m = _need_map(args)
    h = ll_hom(m)
    data = {"degree": h.degree, "coefficients": [encode_gauss(c) for c in h.coeffs],
            "monomials": [f"t0^{h.degree - i}*t1^{i}" for i in range(h.degree + 1)]}
    return Report("rational-ll", True, (f"LL form of degree {h.degree}: {h}".replace("x0", "t0").replace("x1", "t1"),),
                  (m,), data), EXIT_OK


def encode_gauss(c: GaussianRational) -> dict:
    return {"re": str(c.re), "im": str(c.im)}


def cmd_trace(args) -> tuple[Any, int]:
    from .trace import trace_monodromy
    m = _need_map(args)
    tm = trace_monodromy(m, args.eps)
    values = [{"label": lab, "value": None if cv.value is None else [_num(cv.value.real), _num(cv.value.imag)],
               "multiplicity": cv.multiplicity}
              for lab, cv in zip(tm.labels(), tm.critical_values)]
    data = {"base_point": [_num(tm.base_point.real), _num(tm.base_point.imag)], "critical_values": values,
            "permutations": [list(p.images) for p in tm.loop_permutations],
            "tolerances": {"root": tm.tolerances[0], "cluster": tm.tolerances[1]}}
    lines = tuple(f"{lab} ({cv.label(8)}): {p}" for lab, cv, p in zip(tm.labels(), tm.critical_values, tm.loop_permutations))
    items = (tm.constellation(),) if tm.critical_values else ()
    return Report("trace", True, lines, items, data), EXIT_OK


def cmd_bridge_check(args) -> tuple[Any, int]:
    from .trace import bridge_check
    rep = bridge_check(_need_map(args), args.eps)
    return Report("bridge-check", rep.ok, tuple(rep.lines())), EXIT_OK if rep.ok else EXIT_FALSIFIED


def cmd_verify(args) -> tuple[Any, int]:
    from .verify import SUITES
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    lines, ok = [], True
    for name in names:
        fn = SUITES[name]
        params = inspect.signature(fn).parameters
        kwargs = {}
        if args.n is not None and "n_max" in params:
            kwargs["n_max"] = args.n
        if args.trials is not None and "trials" in params:
            kwargs["trials"] = args.trials
        if args.seed is not None and "seed" in params:
            kwargs["seed"] = args.seed
        res = fn(**kwargs)
        res.elapsed = 0.0  # keep output deterministic
        lines += [ln.replace(", 0.0s", "") for ln in res.lines()]
        ok = ok and res.ok
    return Report("verify", ok, tuple(lines)), EXIT_OK if ok else EXIT_FALSIFIED


COMMANDS = {
    "enumerate": cmd_enumerate,
    "ll": cmd_ll,
    "fiber": cmd_fiber,
    "degenerate": cmd_degenerate,
    "perturb": cmd_perturb,
    "nu": cmd_nu,
    "nu-inverse": cmd_nu_inverse,
    "q": cmd_q,
    "rational-ll": cmd_rational_ll,
    "trace": cmd_trace,
    "bridge-check": cmd_bridge_check,
    "verify": cmd_verify,
    "hurwitz-count": cmd_hurwitz_count,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hurwitz", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", nargs="?", help="input document (path or - for stdin)")
        p.add_argument("--n", type=int)
        p.add_argument("--chi", type=int)
        p.add_argument("--divisor")
        p.add_argument("--map")
        p.add_argument("--eps", type=float, default=config.CLUSTER_TOL)
        p.add_argument("--seed", type=int)
        p.add_argument("--trials", type=int)
        p.add_argument("--suite", default="all")
        p.add_argument("--max-orbit", type=int, default=None)
        p.add_argument("--types", default="[]", help="JSON list of cycle types, e.g. [[2],[2]]")
        p.add_argument("--partition", default="[]", help="JSON list of fibre-index classes")
        p.add_argument("--positions", help="JSON list of positions for new values")
        p.add_argument("--point", help="FIBER,POINT index of the critical point to perturb")
        p.add_argument("--all", action="store_true", help="perturb every critical point")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command in ("enumerate", "hurwitz-count") and args.n is None:
        print("error: --n is required", file=sys.stderr)
        return EXIT_INVALID
    try:
        value, code = COMMANDS[args.command](args)
    except (DocumentError, UsageError, ValueError, OrbitTooLarge, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(dumps(encode(value)))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
