"""``abc-analytica`` command line: problem files in, JSON reports out.

Exit codes: 0 holds/equality, 2 input error, 3 hypothesis violation,
4 internal inconsistency (including any ``fails`` status).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Sequence

import jsonschema

from . import corpus as corpus_mod
from .domain import UNIT_DISK, Domain
from .errors import ConvergenceError, HypothesisViolation, InconsistencyError, InputError
from .exact import Polynomial, mason_check, n_theorem_check
from .numeric import DEFAULT_SPEC, PowerSeries, QuadratureSpec
from .verifiers import (
    VerificationReport,
    build_system,
    example_system,
    limit_demo,
    run_example,
    verify_carleson_formula,
    verify_dalpha_comparability,
    verify_prop3,
    verify_theorem1,
    verify_theorem2,
    verify_theorem4,
    verify_vs_inequality,
)

EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_INCONSISTENT = 0, 2, 3, 4

_POLY = {
    "oneOf": [
        {"type": "string"},
        {"type": "array", "items": {"type": "string"}, "minItems": 1},
    ]
}
_NUMBER_OR_PAIR = {
    "oneOf": [
        {"type": "number"},
        {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
    ]
}
_FUNCTION = {
    "oneOf": [
        {"type": "string"},
        {
            "type": "object",
            "properties": {
                "type": {"const": "polynomial"},
                "coeffs": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                "expr": {"type": "string"},
            },
            "required": ["type"],
            "oneOf": [{"required": ["coeffs"]}, {"required": ["expr"]}],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "type": {"const": "series"},
                "coeffs": {"type": "array", "items": _NUMBER_OR_PAIR, "minItems": 1},
            },
            "required": ["type", "coeffs"],
            "additionalProperties": False,
        },
    ]
}
_DOMAIN = {
    "type": "object",
    "properties": {
        "center": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        "radius": {"type": "number", "exclusiveMinimum": 0},
    },
    "required": ["center", "radius"],
    "additionalProperties": False,
}
_QUADRATURE = {
    "type": "object",
    "properties": {
        "boundary_nodes": {"type": "integer"},
        "radial_nodes": {"type": "integer"},
        "refine_limit": {"type": "integer"},
        "tol": {"type": "number"},
        "sup_nodes": {"type": "integer"},
    },
    "additionalProperties": False,
}

MASON_SCHEMA = {
    "type": "object",
    "properties": {
        "version": {"const": 1},
        "a": _POLY,
        "b": _POLY,
        "polys": {"type": "array", "items": _POLY, "minItems": 2},
        "zero_sets": {"enum": ["pairwise", "common"]},
    },
    "oneOf": [{"required": ["a", "b"]}, {"required": ["polys"]}],
    "additionalProperties": False,
}

VERIFY_SCHEMA = {
    "type": "object",
    "properties": {
        "version": {"const": 1},
        "domain": _DOMAIN,
        "functions": {"type": "array", "items": _FUNCTION, "minItems": 2},
        "alpha": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
        "quadrature": _QUADRATURE,
    },
    "required": ["functions"],
    "additionalProperties": False,
}


# ---------------------------------------------------------------------------
# parsing


def _load(path: str, schema: dict) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as exc:
        raise InputError(f"schema violation: {exc.message}") from exc
    return data


def _poly(obj) -> Polynomial:
    if isinstance(obj, str):
        return Polynomial.parse(obj)
    return Polynomial.from_strings(obj)


def _function(obj):
    if isinstance(obj, str):
        return Polynomial.parse(obj)
    if obj["type"] == "polynomial":
        return Polynomial.parse(obj["expr"]) if "expr" in obj else Polynomial.from_strings(obj["coeffs"])
    coeffs = [complex(c) if not isinstance(c, list) else complex(c[0], c[1]) for c in obj["coeffs"]]
    return PowerSeries(coeffs)


def _spec(args: argparse.Namespace, overrides: dict | None = None) -> QuadratureSpec:
    changes = dict(overrides or {})
    if getattr(args, "tol", None) is not None:
        changes["tol"] = args.tol
    if getattr(args, "boundary_nodes", None) is not None:
        changes["boundary_nodes"] = args.boundary_nodes
    return DEFAULT_SPEC.replace(**changes) if changes else DEFAULT_SPEC


# ---------------------------------------------------------------------------
# output


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = json.dumps(v, sort_keys=True)
        else:
            out[key] = v
    return out


def _csv(rows: list[dict]) -> str:
    flat = [_flatten(r) for r in rows]
    keys = sorted({k for r in flat for k in r})
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    writer.writeheader()
    for r in flat:
        writer.writerow(r)
    return buf.getvalue()


def _emit(payload: Any, args: argparse.Namespace, csv_rows: list[dict] | None = None) -> None:
    if args.format == "csv":
        text = _csv(csv_rows if csv_rows is not None else [payload])
    else:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _exit_for(statuses: Sequence[str]) -> int:
    if any(s == "fails" for s in statuses):
        return EXIT_INCONSISTENT
    if any(s == "hypothesis_violated" for s in statuses):
        return EXIT_HYPOTHESIS
    return EXIT_OK


# ---------------------------------------------------------------------------
# commands


def cmd_mason(args: argparse.Namespace) -> int:
    data = _load(args.input, MASON_SCHEMA)
    if "polys" in data:
        ps = [_poly(p) for p in data["polys"]]
        rep = n_theorem_check(ps, data.get("zero_sets", "pairwise"))
        kind = "n_theorem"
    else:
        rep = mason_check(_poly(data["a"]), _poly(data["b"]))
        kind = "mason"
    status = "holds" if rep.holds else "fails"
    _emit({"check": kind, "status": status, "holds": rep.holds, "lhs": rep.lhs, "rhs": rep.rhs}, args)
    return _exit_for([status])


_VERIFIERS = {
    "1": lambda s, spec, a: verify_theorem1(s, spec),
    "2": lambda s, spec, a: verify_theorem2(s, spec),
    "prop3a": lambda s, spec, a: verify_prop3(s, spec, "a"),
    "prop3b": lambda s, spec, a: verify_prop3(s, spec, "b"),
    "4": lambda s, spec, a: verify_theorem4(s, a, spec),
}


def cmd_verify(args: argparse.Namespace) -> int:
    data = _load(args.input, VERIFY_SCHEMA)
    spec = _spec(args, data.get("quadrature"))
    domain = Domain.from_json(data["domain"]) if "domain" in data else UNIT_DISK
    alpha = args.alpha if args.alpha is not None else data.get("alpha", 0.5)
    fs = [_function(f) for f in data["functions"]]
    try:
        system = build_system(fs, domain, spec)
    except HypothesisViolation as exc:
        report = VerificationReport(f"theorem{args.theorem}", "hypothesis_violated", diagnostics={"reason": str(exc)})
    else:
        report = _VERIFIERS[args.theorem](system, spec, alpha)
        report.diagnostics["system"] = system.summary()
    _emit(report.to_dict(), args)
    return _exit_for([report.status])


def _demo_lemmas(spec: QuadratureSpec, alpha: float) -> list[VerificationReport]:
    reports = []
    for case in corpus_mod.lemma_corpus():
        reports.append(verify_carleson_formula(case.f, case.theta, spec))
        reports.append(verify_vs_inequality(case.f, case.theta, spec))
        reports.append(verify_dalpha_comparability(case.theta, alpha, spec, samples=[case.f]))
    return reports


def cmd_demo(args: argparse.Namespace) -> int:
    spec = _spec(args)
    if args.which in ("example1", "example2"):
        which = 1 if args.which == "example1" else 2
        kwargs = {"n": args.n if args.n is not None else 2}
        if args.eps is not None:
            kwargs["eps"] = args.eps
        if which == 2:
            kwargs["m"] = args.m if args.m is not None else 5
        reports = list(run_example(which, spec=spec, **kwargs))
        system = example_system(which, spec=spec, **kwargs)
        for variant in ("a", "b"):
            r = verify_prop3(system, spec, variant)
            r.diagnostics["example"] = which
            reports.append(r)
        payload = {"demo": args.which, "reports": [r.to_dict() for r in reports]}
        _emit(payload, args, [r.to_dict() for r in reports])
        return _exit_for([r.status for r in reports])
    if args.which == "limit":
        W = Polynomial.parse(args.poly)
        schedule = [float(r) for r in args.radii.split(",")]
        table = limit_demo(W, schedule, spec)
        if args.format == "csv":
            text = table.to_csv()
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
        else:
            _emit({"demo": "limit", "W": str(W), **table.to_json()}, args)
        return EXIT_OK
    reports = _demo_lemmas(spec, args.alpha if args.alpha is not None else 0.5)
    _emit({"demo": "lemmas", "reports": [r.to_dict() for r in reports]}, args, [r.to_dict() for r in reports])
    return _exit_for([r.status for r in reports])


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, help="quadrature refinement tolerance")
    common.add_argument("--boundary-nodes", type=int, help="initial boundary nodes (power of two, >= 64)")
    common.add_argument("--alpha", type=float, help="D_alpha exponent in (0, 1)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = argparse.ArgumentParser(prog="abc-analytica", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mason", parents=[common], help="polynomial abc / n-theorem check")
    p.add_argument("input", help="problem file (JSON), or - for stdin")
    p.set_defaults(func=cmd_mason)

    p = sub.add_parser("verify", parents=[common], help="run a theorem verifier on a system")
    p.add_argument("input", help="problem file (JSON), or - for stdin")
    p.add_argument("--theorem", required=True, choices=sorted(_VERIFIERS))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("demo", parents=[common], help="built-in demonstrations")
    p.add_argument("which", choices=("example1", "example2", "limit", "lemmas"))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--poly", default="z^3+1", help="W for the limit demo")
    p.add_argument("--radii", default="2,5,10,50,100", help="comma-separated radii for the limit demo")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HypothesisViolation as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (InconsistencyError, ConvergenceError) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
