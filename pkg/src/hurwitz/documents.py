"""JSON documents: ``{"kind", "version", "payload"}`` with a strict schema per kind.

Rationals are ``"p/q"`` strings, Gaussian rationals ``{"re", "im"}``,
permutations image arrays (0-based), and positions either a string label or
an exact homogeneous pair ``{"t0", "t1"}``.  Singular points list the
indices of their cycles in the order of :func:`hurwitz.perm.cycles`.
Output is canonical: sorted keys, two-space indentation, trailing newline.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import jsonschema

from .boundary import BoundaryClass, CriticalFiberDatum, InvalidBoundary
from .covering import BranchPoint, Constellation, InvalidCovering, Position
from .perm import Permutation
from .polyalg import GaussianRational, HomogeneousPolynomial, NotCoprime, RationalMapClass, SpherePoint
from .space import Block, BranchDivisor, DecoratedClass

VERSION = "1"
KINDS = ("constellation", "boundary", "divisor", "decorated", "rationalmap", "report")


class DocumentError(ValueError):
    """A document that fails its schema or the invariants of the value it encodes."""


# -- schema ---------------------------------------------------------------------

_RATIONAL = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
_GAUSS = {"type": "object", "properties": {"re": _RATIONAL, "im": _RATIONAL},
          "required": ["re", "im"], "additionalProperties": False}
_POSITION = {"oneOf": [
    {"type": "string", "minLength": 1},
    {"type": "object", "properties": {"t0": _GAUSS, "t1": _GAUSS},
     "required": ["t0", "t1"], "additionalProperties": False},
]}
_PERM = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_N = {"type": "integer", "minimum": 1}


def _obj(props: dict, required: list[str] | None = None) -> dict:
    return {"type": "object", "properties": props, "required": required if required is not None else list(props),
            "additionalProperties": False}


_PAYLOADS = {
    "constellation": _obj({"n": _N, "branch_points": {"type": "array", "items": _obj({
        "position": _POSITION, "monodromy": _PERM})}}),
    "boundary": _obj({"n": _N, "fibers": {"type": "array", "items": _obj({
        "position": _POSITION, "monodromy": _PERM,
        "singular_points": {"type": "array", "items": _obj({
            "cycles": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
            "genus": {"type": "integer", "minimum": 0}})}})}}),
    "divisor": _obj({"entries": {"type": "array", "items": _obj({
        "position": _POSITION, "multiplicity": {"type": "integer", "minimum": 1}})}}),
    "decorated": _obj({"n": _N, "blocks": {"type": "array", "items": _obj({
        "label": _POSITION, "decorated": {"type": "boolean"},
        "transpositions": {"type": "array", "items": _PERM, "minItems": 1}})}}),
    "rationalmap": _obj({"P": {"type": "array", "items": _GAUSS, "minItems": 2},
                         "Q": {"type": "array", "items": _GAUSS, "minItems": 2}}),
    "report": _obj({"title": {"type": "string"}, "ok": {"type": "boolean"},
                    "lines": {"type": "array", "items": {"type": "string"}},
                    "items": {"type": "array", "items": {"$ref": "#"}},
                    "data": {"type": "object"}}, ["title", "ok", "lines", "items"]),
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {"kind": {"enum": list(KINDS)}, "version": {"const": VERSION}, "payload": {"type": "object"}},
    "required": ["kind", "version", "payload"],
    "additionalProperties": False,
    "allOf": [{"if": {"properties": {"kind": {"const": k}}}, "then": {"properties": {"payload": s}}}
              for k, s in _PAYLOADS.items()],
}
_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


@dataclass(frozen=True)
class Report:
    title: str
    ok: bool
    lines: tuple[str, ...] = ()
    items: tuple[Any, ...] = ()
    data: dict | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Document:
    kind: str
    payload: dict
    version: str = VERSION

    def to_json(self) -> dict:
        return {"kind": self.kind, "version": self.version, "payload": self.payload}


# -- scalars ------------------------------------------------------------------------


def _rat(x: Fraction) -> str:
    return str(Fraction(x))


def _gauss(x: GaussianRational) -> dict:
    return {"re": _rat(x.re), "im": _rat(x.im)}


def _ungauss(d: dict) -> GaussianRational:
    return GaussianRational(Fraction(d["re"]), Fraction(d["im"]))


def _position(p: Position) -> Any:
    if isinstance(p, SpherePoint):
        return {"t0": _gauss(p.t0), "t1": _gauss(p.t1)}
    return p


def _unposition(p: Any) -> Position:
    if isinstance(p, str):
        return p
    return SpherePoint(_ungauss(p["t0"]), _ungauss(p["t1"]))


# -- values <-> payloads -----------------------------------------------------------------


def encode(value: Any) -> Document:
    """Wrap a library value in a document."""
    if isinstance(value, Constellation):
        return Document("constellation", {"n": value.n, "branch_points": [
            {"position": _position(bp.position), "monodromy": list(bp.monodromy.images)} for bp in value.branch_points]})
    if isinstance(value, BoundaryClass):
        fibers = []
        for f in value.fibers:
            fibers.append({"position": _position(f.position), "monodromy": list(f.monodromy.images),
                           "singular_points": [{"cycles": f.cycle_indices(p), "genus": p.genus}
                                               for p in f.singular_points]})
        return Document("boundary", {"n": value.n, "fibers": fibers})
    if isinstance(value, BranchDivisor):
        return Document("divisor", {"entries": [{"position": _position(p), "multiplicity": k}
                                                for p, k in value.entries]})
    if isinstance(value, DecoratedClass):
        rep = value.representative()
        return Document("decorated", {"n": rep.n, "blocks": [
            {"label": _position(b.label), "decorated": b.decorated,
             "transpositions": [list(t.images) for t in b.transpositions]} for b in rep.blocks]})
    if isinstance(value, RationalMapClass):
        return Document("rationalmap", {"P": [_gauss(c) for c in value.P.coeffs],
                                        "Q": [_gauss(c) for c in value.Q.coeffs]})
    if isinstance(value, Report):
        payload = {"title": value.title, "ok": value.ok, "lines": list(value.lines),
                   "items": [encode(v).to_json() if not isinstance(v, Document) else v.to_json() for v in value.items]}
        if value.data is not None:
            payload["data"] = value.data
        return Document("report", payload)
    raise TypeError(f"cannot encode {type(value).__name__}")


def _perm(images: list[int], where: str) -> Permutation:
    try:
        return Permutation(tuple(images))
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def decode(doc: Document) -> Any:
    """The library value described by a (schema-valid) document."""
    p = doc.payload
    try:
        if doc.kind == "constellation":
            bps = tuple(BranchPoint(_unposition(b["position"]), _perm(b["monodromy"], f"payload/branch_points/{i}/monodromy"))
                        for i, b in enumerate(p["branch_points"]))
            return Constellation(p["n"], bps)
        if doc.kind == "boundary":
            fibers = []
            for i, f in enumerate(p["fibers"]):
                mono = _perm(f["monodromy"], f"payload/fibers/{i}/monodromy")
                groups = [(sp["cycles"], sp["genus"]) for sp in f["singular_points"]]
                fibers.append(CriticalFiberDatum.from_cycle_indices(_unposition(f["position"]), mono, groups))
            return BoundaryClass(p["n"], tuple(fibers))
        if doc.kind == "divisor":
            return BranchDivisor(tuple((_unposition(e["position"]), e["multiplicity"]) for e in p["entries"]))
        if doc.kind == "decorated":
            blocks = tuple(Block(_unposition(b["label"]), b["decorated"],
                                 tuple(_perm(t, f"payload/blocks/{i}/transpositions") for t in b["transpositions"]))
                           for i, b in enumerate(p["blocks"]))
            return DecoratedClass(p["n"], blocks)
        if doc.kind == "rationalmap":
            return RationalMapClass(HomogeneousPolynomial.of([_ungauss(c) for c in p["P"]]),
                                    HomogeneousPolynomial.of([_ungauss(c) for c in p["Q"]]))
        if doc.kind == "report":
            items = tuple(Document(it["kind"], it["payload"], it["version"]) for it in p["items"])
            return Report(p["title"], p["ok"], tuple(p["lines"]), items, p.get("data"))
    except DocumentError:
        raise
    except (InvalidCovering, InvalidBoundary, NotCoprime, ValueError) as exc:
        raise DocumentError(f"payload ({doc.kind}): {exc}") from None
    raise DocumentError(f"unknown kind {doc.kind}")


# -- text ------------------------------------------------------------------------------


def parse(text: str) -> Document:
    """Parse and validate a document; the encoded value must satisfy its invariants."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    errors = sorted(_VALIDATOR.iter_errors(raw), key=lambda e: list(e.absolute_path))
    if errors:
        err = min(errors, key=lambda e: len(list(e.absolute_path)) * -1)
        path = "/".join(str(x) for x in err.absolute_path) or "<root>"
        raise DocumentError(f"schema violation at {path}: {err.message}")
    doc = Document(raw["kind"], raw["payload"], raw["version"])
    decode(doc)
    if doc.kind == "report":
        for it in doc.payload["items"]:
            decode(Document(it["kind"], it["payload"], it["version"]))
    return doc


def dumps(doc: Document) -> str:
    return json.dumps(doc.to_json(), sort_keys=True, indent=2) + "\n"


def print_document(doc: Document) -> str:
    return dumps(doc)


def load_value(text: str) -> Any:
    return decode(parse(text))


def dump_value(value: Any) -> str:
    return dumps(encode(value))
