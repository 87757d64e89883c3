"""JSON job files: parsing, validation and exact serialization.

A job file has the shape

    { "ring":   {"vars": ["x", "y"]},
      "define": { "a": {"ideal": {"gens": [[2,0],[0,3]]}},
                  "s": {"sequence": {"kind": "powers", "ideal": "a"}} },
      "run":    {"cmd": "lct", "args": {"sequence": "s"}} }

Rationals are JSON integers or strings "p/q"; they are parsed exactly and
serialized back as "p/q" strings, never through floating point. Validation
errors carry the JSON pointer of the offending element.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError
from .newton import (
    BUILTIN_REGIONS,
    GradedSequence,
    MonomialIdeal,
    MonomialValuation,
    NewtonRegion,
    PolyhedralRegion,
    PowerSequence,
    RegionSequence,
    TableSequence,
    ValuationIdealSequence,
    minimal_generators,
)
from .valspace2d import Polynomial2, PuiseuxData, SkpChain
from .ratlp import rational


class JobError(InputError):
    """Schema violation with the JSON pointer path of the offender."""

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer}: {message}")
        self.pointer = pointer


@dataclass
class JobSpec:
    vars: tuple[str, ...]
    objects: dict
    command: str | None
    args: dict
    warnings: list = field(default_factory=list)
    raw: dict = field(default_factory=dict)

    @property
    def nvars(self) -> int:
        return len(self.vars)


COMMANDS = ("lct", "arn", "multiplier", "jumps", "region", "valuations",
            "asym", "fekete", "enlarge", "chain", "fan", "check")


def parse_rational(value, pointer) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise JobError(pointer, f"rationals must be ints or 'p/q' strings, got {value!r}")
    try:
        return rational(value)
    except InputError as exc:
        raise JobError(pointer, str(exc)) from None


def format_rational(value: Fraction) -> str:
    if value == int(value):
        return str(int(value))
    return f"{value.numerator}/{value.denominator}"


def parse_job(text: str) -> JobSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise JobError("/", f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise JobError("/", "job must be a JSON object")
    ring = doc.get("ring")
    if not isinstance(ring, dict) or not isinstance(ring.get("vars"), list) \
            or not ring["vars"] or not all(isinstance(v, str) for v in ring["vars"]):
        raise JobError("/ring", "need {'vars': [names...]} with at least one name")
    spec = JobSpec(vars=tuple(ring["vars"]), objects={}, command=None, args={}, raw=doc)

    define = doc.get("define", {})
    if not isinstance(define, dict):
        raise JobError("/define", "must be an object of named definitions")
    for name, obj in define.items():
        spec.objects[name] = _parse_object(spec, obj, f"/define/{name}")

    run = doc.get("run")
    if run is not None:
        if not isinstance(run, dict) or "cmd" not in run:
            raise JobError("/run", "must be {'cmd': ..., 'args': {...}}")
        if run["cmd"] not in COMMANDS:
            raise JobError("/run/cmd", f"unknown command {run['cmd']!r}")
        spec.command = run["cmd"]
        args = run.get("args", {})
        if not isinstance(args, dict):
            raise JobError("/run/args", "must be an object")
        spec.args = args
    return spec


def _parse_object(spec: JobSpec, obj, pointer):
    if not isinstance(obj, dict) or len(obj) != 1:
        raise JobError(pointer, "definition must be a single-key object")
    kind, body = next(iter(obj.items()))
    parser = _OBJECT_PARSERS.get(kind)
    if parser is None:
        raise JobError(pointer, f"unknown object kind {kind!r}")
    return parser(spec, body, f"{pointer}/{kind}")


def _parse_ideal(spec: JobSpec, body, pointer) -> MonomialIdeal:
    if not isinstance(body, dict) or "gens" not in body:
        raise JobError(pointer, "need {'gens': [[e1,...],...]}")
    gens = body["gens"]
    if not isinstance(gens, list):
        raise JobError(f"{pointer}/gens", "must be a list of exponent vectors")
    if not gens:
        return MonomialIdeal.zero(spec.nvars)
    pts = []
    for i, g in enumerate(gens):
        if not isinstance(g, list) or len(g) != spec.nvars \
                or not all(isinstance(e, int) and e >= 0 for e in g):
            raise JobError(f"{pointer}/gens/{i}",
                           f"exponent vector of {spec.nvars} nonnegative ints required")
        pts.append(tuple(g))
    ideal = minimal_generators(pts, spec.nvars)
    if len(ideal.gens) != len(set(map(tuple, gens))):
        spec.warnings.append(f"{pointer}: generators were not an antichain; minimalized")
    return ideal


def _parse_region(spec: JobSpec, body, pointer) -> NewtonRegion:
    if not isinstance(body, dict) or "vertices" not in body:
        raise JobError(pointer, "need {'vertices': [[p/q,...],...]}")
    verts = []
    for i, v in enumerate(body["vertices"]):
        if not isinstance(v, list) or len(v) != spec.nvars:
            raise JobError(f"{pointer}/vertices/{i}", f"point of length {spec.nvars} required")
        verts.append(tuple(parse_rational(x, f"{pointer}/vertices/{i}/{k}")
                           for k, x in enumerate(v)))
    try:
        return PolyhedralRegion(verts)
    except InputError as exc:
        raise JobError(pointer, str(exc)) from None


def _parse_sequence(spec: JobSpec, body, pointer) -> GradedSequence:
    if not isinstance(body, dict) or "kind" not in body:
        raise JobError(pointer, "need {'kind': powers|valuation|region|table|oracle, ...}")
    kind = body["kind"]
    try:
        if kind == "powers":
            ideal = _resolve(spec, body.get("ideal"), MonomialIdeal, _parse_ideal,
                             f"{pointer}/ideal")
            return PowerSequence(ideal)
        if kind == "valuation":
            alpha = body.get("alpha")
            if not isinstance(alpha, list) or len(alpha) != spec.nvars:
                raise JobError(f"{pointer}/alpha", f"{spec.nvars} weights required")
            return ValuationIdealSequence(
                [parse_rational(a, f"{pointer}/alpha/{i}") for i, a in enumerate(alpha)])
        if kind == "region":
            region = _resolve(spec, body.get("region"), NewtonRegion, _parse_region,
                              f"{pointer}/region")
            return RegionSequence(region)
        if kind == "table":
            prefix = body.get("prefix")
            if not isinstance(prefix, list) or not prefix:
                raise JobError(f"{pointer}/prefix", "nonempty list of ideals required")
            ideals = [_resolve(spec, p, MonomialIdeal, _parse_ideal, f"{pointer}/prefix/{i}")
                      for i, p in enumerate(prefix)]
            return TableSequence(ideals)
        if kind == "oracle":
            name = body.get("name")
            if name not in BUILTIN_REGIONS:
                raise JobError(f"{pointer}/name",
                               f"unknown oracle {name!r}; available: {sorted(BUILTIN_REGIONS)}")
            if spec.nvars != 2:
                raise JobError(pointer, "built-in oracle regions are two-dimensional")
            return RegionSequence(BUILTIN_REGIONS[name]())
    except InputError as exc:
        if isinstance(exc, JobError):
            raise
        raise JobError(pointer, str(exc)) from None
    raise JobError(f"{pointer}/kind", f"unknown sequence kind {kind!r}")


def _parse_chain(spec: JobSpec, body, pointer) -> SkpChain:
    if not isinstance(body, dict) or "steps" not in body or not isinstance(body["steps"], list):
        raise JobError(pointer, "need {'steps': [[r,s],...]}")
    steps = []
    for i, st in enumerate(body["steps"]):
        if not isinstance(st, list) or len(st) != 2 \
                or not all(isinstance(v, int) for v in st):
            raise JobError(f"{pointer}/steps/{i}", "step must be [r, s] with integers")
        steps.append((st[0], st[1]))
    try:
        return SkpChain(steps)
    except InputError as exc:
        raise JobError(pointer, str(exc)) from None


def _parse_poly(spec: JobSpec, body, pointer) -> Polynomial2:
    if spec.nvars != 2:
        raise JobError(pointer, "polynomials are supported in two variables")
    if not isinstance(body, dict) or "terms" not in body:
        raise JobError(pointer, "need {'terms': [[[i,j], coeff], ...]}")
    pairs = []
    for i, term in enumerate(body["terms"]):
        if not isinstance(term, list) or len(term) != 2 or not isinstance(term[0], list):
            raise JobError(f"{pointer}/terms/{i}", "term must be [[i,j], coeff]")
        pairs.append((tuple(term[0]), parse_rational(term[1], f"{pointer}/terms/{i}/1")))
    try:
        return Polynomial2.from_terms(pairs)
    except InputError as exc:
        raise JobError(pointer, str(exc)) from None


def _parse_valuation(spec: JobSpec, body, pointer) -> MonomialValuation:
    if not isinstance(body, dict) or "alpha" not in body or not isinstance(body["alpha"], list):
        raise JobError(pointer, "need {'alpha': [w1, ...]}")
    if len(body["alpha"]) != spec.nvars:
        raise JobError(f"{pointer}/alpha", f"{spec.nvars} weights required")
    return MonomialValuation.of(
        [parse_rational(a, f"{pointer}/alpha/{i}") for i, a in enumerate(body["alpha"])])


def _parse_puiseux(spec: JobSpec, body, pointer) -> PuiseuxData:
    if not isinstance(body, dict) or "exponents" not in body or "coefficients" not in body:
        raise JobError(pointer, "need {'exponents': [...], 'coefficients': [...]}")
    exps = [parse_rational(b, f"{pointer}/exponents/{i}")
            for i, b in enumerate(body["exponents"])]
    coeffs = [parse_rational(c, f"{pointer}/coefficients/{i}")
              for i, c in enumerate(body["coefficients"])]
    try:
        return PuiseuxData(exps, coeffs)
    except InputError as exc:
        raise JobError(pointer, str(exc)) from None


_OBJECT_PARSERS = {
    "ideal": _parse_ideal,
    "region": _parse_region,
    "sequence": _parse_sequence,
    "chain": _parse_chain,
    "poly": _parse_poly,
    "valuation": _parse_valuation,
    "puiseux": _parse_puiseux,
}


def _resolve(spec: JobSpec, value, want_type, inline_parser, pointer):
    """An argument is either the name of a defined object or an inline body."""
    if isinstance(value, str):
        if value not in spec.objects:
            raise JobError(pointer, f"undefined name {value!r}")
        obj = spec.objects[value]
        if not isinstance(obj, want_type):
            raise JobError(pointer, f"{value!r} is a {type(obj).__name__}, "
                                    f"expected {want_type.__name__}")
        return obj
    if value is None:
        raise JobError(pointer, "missing required argument")
    return inline_parser(spec, value, pointer)


def resolve_arg(spec: JobSpec, key: str, want_type, default=None, required=False):
    """Look up a run argument by name, resolving object references."""
    pointer = f"/run/args/{key}"
    if key not in spec.args:
        if required:
            raise JobError(pointer, "missing required argument")
        return default
    parser = _PARSER_FOR_TYPE[want_type]
    return _resolve(spec, spec.args[key], want_type, parser, pointer)


_PARSER_FOR_TYPE = {
    MonomialIdeal: _parse_ideal,
    NewtonRegion: _parse_region,
    GradedSequence: _parse_sequence,
    SkpChain: _parse_chain,
    Polynomial2: _parse_poly,
    MonomialValuation: _parse_valuation,
    PuiseuxData: _parse_puiseux,
}


def serialize_job(spec: JobSpec) -> str:
    """Canonical re-serialization of the raw job document (round-trip aid)."""
    return json.dumps(spec.raw, sort_keys=True, indent=2) + "\n"
