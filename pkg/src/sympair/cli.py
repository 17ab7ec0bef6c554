"""Command-line front end.

Subcommands:

  audit    build a pair, sweep its nilpotent orbits, audit each, chain
           the results through the implication rules, emit a JSON report
  triple   adapted sl2 triple over a supplied nilpotent element
  descend  descendant pair at a supplied split semisimple element
  weil     local constants of a diagonal quadratic form at one place
  infer    closure of a fact file over the built-in implication rules

Exit codes: 0 success, 1 a criterion failed (some pass flag is false),
2 bad input, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .criteria import audit_orbits
from .errors import InputError, InvariantViolation, PreconditionError, ShapeError
from .inference import close
from .pairs import descendant, descendant_dimension_identity
from .report import (
    DEFAULT_MAX_ORBIT_N,
    SCHEMA_VERSION,
    audit_report,
    build_pair,
    fmt,
    pair_summary,
    parse_pair_spec,
    parse_rational,
    parse_vector,
    render_json,
    triple_doc,
)
from .sl2 import theta_adapt
from .weil import DiagonalQuadraticForm, Place, delta_factor, homogeneity_factor, weil_gamma


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (InputError, PreconditionError, ShapeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print("INVARIANT VIOLATED: %s" % exc, file=sys.stderr)
        print("a structural guarantee of the computation failed; "
              "this is a bug or corrupted input, not a criterion failure", file=sys.stderr)
        return 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sympair",
        description="exact audits and local constants for symmetric pairs")
    sub = parser.add_subparsers(dest="command", required=True)

    p_audit = sub.add_parser("audit", help="sweep and audit all nilpotent orbits")
    _add_pair_args(p_audit)
    p_audit.add_argument("--out", help="write the JSON report here (default stdout)")
    p_audit.set_defaults(handler=_cmd_audit)

    p_triple = sub.add_parser("triple", help="adapted sl2 triple over a nilpotent element")
    _add_pair_args(p_triple)
    p_triple.add_argument("--element", required=True,
                          help="comma-separated rational coordinates in the algebra basis")
    p_triple.set_defaults(handler=_cmd_triple)

    p_desc = sub.add_parser("descend", help="descendant pair at a semisimple element")
    _add_pair_args(p_desc)
    p_desc.add_argument("--element", required=True,
                        help="comma-separated rational coordinates in the algebra basis")
    p_desc.set_defaults(handler=_cmd_descend)

    p_weil = sub.add_parser("weil", help="local constants of a diagonal quadratic form")
    p_weil.add_argument("--place", required=True, help="real | complex | p:<prime>")
    p_weil.add_argument("--form", required=True,
                        help="comma-separated nonzero rational coefficients")
    p_weil.add_argument("--t", default="1", help="scaling parameter (default 1)")
    p_weil.set_defaults(handler=_cmd_weil)

    p_infer = sub.add_parser("infer", help="close a fact set under the implication rules")
    p_infer.add_argument("--facts", required=True,
                         help="JSON file with {\"pair_id\": ..., \"atoms\": [...]}")
    p_infer.add_argument("--out", help="write the closure here (default stdout)")
    p_infer.set_defaults(handler=_cmd_infer)
    return parser


def _add_pair_args(p: argparse.ArgumentParser):
    p.add_argument("--family", choices=["diagonal", "quadratic_ext", "custom"])
    p.add_argument("--n", type=int, help="inner size for the built-in families")
    p.add_argument("--d", type=int, help="discriminant for quadratic_ext")
    p.add_argument("--spec", help="JSON pair-spec file (required for custom)")
    p.add_argument("--max-orbit-n", type=int, default=None,
                   help="largest inner size the orbit sweep accepts (default %d)"
                        % DEFAULT_MAX_ORBIT_N)


def _pair_from_args(args) -> tuple:
    if args.spec:
        doc = _load_json(args.spec)
        spec = parse_pair_spec(doc)
    else:
        if not args.family:
            raise InputError("need --family or --spec")
        doc = {"family": args.family}
        if args.n is not None:
            doc["n"] = args.n
        if args.d is not None:
            doc["d"] = args.d
        spec = parse_pair_spec(doc)
    if args.max_orbit_n is not None:
        if args.max_orbit_n < 1:
            raise InputError("--max-orbit-n must be positive")
        spec.max_orbit_n = args.max_orbit_n
    return spec, build_pair(spec)


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise InputError("bad JSON in %s: line %d column %d"
                         % (path, exc.lineno, exc.colno)) from exc


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_audit(args) -> int:
    spec, pair = _pair_from_args(args)
    if spec.family != "custom" and spec.n > spec.max_orbit_n:
        raise InputError("n=%d exceeds the orbit sweep cap %d (raise --max-orbit-n)"
                         % (spec.n, spec.max_orbit_n))
    audits = audit_orbits(pair)
    doc = audit_report(pair, audits)
    _emit(render_json(doc), args.out)
    return 0 if doc["all_pass"] else 1


def _cmd_triple(args) -> int:
    _, pair = _pair_from_args(args)
    x = parse_vector(args.element.split(","), pair.dim_g)
    t = theta_adapt(pair, x)
    doc = {
        "schema": SCHEMA_VERSION,
        "pair": pair_summary(pair),
        "element": [fmt(c) for c in x],
        "triple": triple_doc(t),
    }
    _emit(render_json(doc), None)
    return 0


def _cmd_descend(args) -> int:
    _, pair = _pair_from_args(args)
    x = parse_vector(args.element.split(","), pair.dim_g)
    sub = descendant(pair, x)
    lhs, rhs = descendant_dimension_identity(pair, x, sub)
    doc = {
        "schema": SCHEMA_VERSION,
        "pair": pair_summary(pair),
        "element": [fmt(c) for c in x],
        "descendant": pair_summary(sub),
        "dimension_identity": {"dim_sub_gsigma": lhs, "predicted": rhs, "holds": lhs == rhs},
    }
    _emit(render_json(doc), None)
    return 0 if lhs == rhs else 1


def _cmd_weil(args) -> int:
    place = Place.parse(args.place)
    coeffs = tuple(parse_rational(c) for c in args.form.split(","))
    form = DiagonalQuadraticForm(coeffs)
    t = parse_rational(args.t)
    if t == 0:
        raise InputError("--t must be nonzero")
    gamma = weil_gamma(form, place)
    delta = delta_factor(form, t, place)
    root, mod_sq, mod_dec = homogeneity_factor(form, t, place)
    doc = {
        "schema": SCHEMA_VERSION,
        "place": str(place),
        "form": [fmt(c) for c in coeffs],
        "t": fmt(t),
        "gamma": {"exponent": gamma.exponent, "value": str(gamma)},
        "delta": {"exponent": delta.exponent, "value": str(delta)},
        "homogeneity_factor": {
            "root_exponent": root.exponent,
            "root": str(root),
            "modulus_squared": fmt(mod_sq),
            "modulus_decimal": mod_dec,
        },
    }
    _emit(render_json(doc), None)
    return 0


def _cmd_infer(args) -> int:
    doc = _load_json(args.facts)
    if not isinstance(doc, dict):
        raise InputError("facts file must be a JSON object")
    atoms = doc.get("atoms", [])
    if not isinstance(atoms, list) or not all(isinstance(a, str) for a in atoms):
        raise InputError("atoms must be a list of strings")
    closure = close(sorted(set(atoms)))
    derivations = {}
    for atom in sorted(closure.derived()):
        derivations[atom] = [
            {"rule": s.rule, "premises": list(s.premises), "conclusion": s.conclusion}
            for s in closure.chain(atom)
        ]
    out_doc = {
        "schema": SCHEMA_VERSION,
        "pair_id": doc.get("pair_id"),
        "input_atoms": sorted(set(atoms)),
        "closure": sorted(closure.atoms),
        "derivations": derivations,
    }
    _emit(render_json(out_doc), args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
