"""Command-line interface.

Reads polytopes or ray data from JSON documents (or inline ``--rays`` /
``--offsets``), dispatches to the library, and prints a result document as
JSON (default) or an aligned table (``--table``).  All printed numbers are
exact; ``--approx`` adds a clearly marked display-only decimal rendering.

Exit codes: 0 on success, 1 on any input problem, 2 when an internal
exact-identity check failed (two routes that must agree disagreed).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import data as fixtures
from .ehrhart import count_points, ehrhart_polynomial, reciprocity_check, reflexive_closed_form
from .errors import InternalInconsistency, InvalidInput, QbaryError
from .exactnum import rational_to_json, vector_to_json
from .expansion import (
    asymptotic_coefficients,
    barycenter_function,
    df_coefficients,
    quantized_barycenter,
    reflexive_polygon_bck,
    rooftop,
)
from .polytope import (
    Polytope,
    classify,
    facet_data,
    measure,
    polytope_from_document,
    polytope_from_halfspaces,
    support_value,
)
from .stability import del_pezzo_closed_form, delta, delta_k, delta_sequence
from .toric import (
    ToricData,
    hrr_coefficients,
    mixed_volume,
    rooftop_coefficients,
    rooftop_fan,
    toric_data,
    toric_from_polytope,
)

COMMANDS = (
    "count",
    "bck",
    "bc",
    "ehrhart",
    "reciprocity",
    "expand",
    "rooftop",
    "classify",
    "mixed-volume",
    "hrr",
    "rooftop-coeffs",
    "delta",
    "delta-seq",
    "df",
    "fan",
)


# ---------------------------------------------------------------------------
# input plumbing

def _load_document(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        try:
            return fixtures.fixture_document(path.removesuffix(".json"))
        except InvalidInput:
            raise InvalidInput(f"no such input file or fixture: {path}") from None
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(
            f"malformed JSON in {path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None


def _parse_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise InvalidInput(f"expected a comma-separated integer vector, got {text!r}")


def _parse_rays(text: str) -> list[tuple[int, ...]]:
    return [_parse_vector(part) for part in text.split(";") if part]


def _resolve_input(args) -> tuple[Polytope, ToricData, str | None]:
    """Polytope plus toric data (ray order from the document when present)."""
    if args.rays or args.offsets:
        if not (args.rays and args.offsets):
            raise InvalidInput("--rays and --offsets must be given together")
        if args.input:
            raise InvalidInput("give either --input or --rays/--offsets, not both")
        t = toric_data(_parse_rays(args.rays), _parse_vector(args.offsets))
        return t.polytope, t, None
    if not args.input:
        raise InvalidInput("an input is required (--input FILE or --rays/--offsets)")
    doc = _load_document(args.input)
    polytope, name = polytope_from_document(doc)
    if "normals" in doc:
        t = toric_data(doc["normals"], doc["offsets"])
    else:
        t = toric_from_polytope(polytope)
    return polytope, t, name


# ---------------------------------------------------------------------------
# commands

def _cmd_count(args, p: Polytope, t: ToricData) -> dict:
    return {"count": count_points(p, args.k)}


def _cmd_bck(args, p: Polytope, t: ToricData) -> dict:
    value = quantized_barycenter(p, args.k).value
    diagnostics = {}
    if barycenter_function(p).evaluate(args.k) != value:
        raise InternalInconsistency("rational form disagrees with enumeration")
    diagnostics["rational_function_checked"] = True
    cls = classify(p)
    if p.dim == 2 and cls.reflexive:
        reflexive_polygon_bck(p, args.k)  # raises on disagreement
        diagnostics["reflexive_polygon_form_checked"] = True
    return {"Bc_k": vector_to_json(value), "diagnostics": diagnostics}


def _cmd_bc(args, p: Polytope, t: ToricData) -> dict:
    geo = measure(p)
    boundary = facet_data(p)
    return {
        "Bc": vector_to_json(geo.barycenter),
        "volume": rational_to_json(geo.volume),
        "boundary_volume": rational_to_json(boundary.boundary_normalized_volume),
        "boundary_barycenter": vector_to_json(boundary.boundary_barycenter),
    }


def _cmd_ehrhart(args, p: Polytope, t: ToricData) -> dict:
    ehr = ehrhart_polynomial(p)
    diagnostics = {}
    if classify(p).reflexive and p.dim in (2, 3):
        reflexive_closed_form(p)  # raises on disagreement
        diagnostics["reflexive_closed_form_checked"] = True
    return {
        "coefficients": ehr.poly.to_json(),
        "source": ehr.source,
        "diagnostics": diagnostics,
    }


def _cmd_reciprocity(args, p: Polytope, t: ToricData) -> dict:
    report = reciprocity_check(p, args.kmax)
    return {
        "checks": [
            {
                "k": e.k,
                "general": e.general_ok,
                **({"reflexive": e.reflexive_ok} if e.reflexive_ok is not None else {}),
            }
            for e in report.entries
        ],
        "all_passed": report.all_passed,
    }


def _cmd_expand(args, p: Polytope, t: ToricData) -> dict:
    coeffs = asymptotic_coefficients(p, args.order)
    return {"a": [vector_to_json(term) for term in coeffs.terms]}


def _cmd_rooftop(args, p: Polytope, t: ToricData) -> dict:
    v = _parse_vector(args.v)
    q = args.q if args.q is not None else 1 - support_value(p, v)
    roof = rooftop(p, v, q)
    return {
        "q": q,
        "vertices": [list(u) for u in roof.vertices],
        "normals": [list(f.normal) for f in roof.facets],
        "offsets": [f.offset for f in roof.facets],
    }


def _cmd_classify(args, p: Polytope, t: ToricData) -> dict:
    cls = classify(p)
    return {"reflexive": cls.reflexive, "delzant": cls.delzant}


def _cmd_mixed_volume(args) -> dict:
    if not args.input:
        raise InvalidInput("mixed-volume needs one --input per argument slot")
    bodies = []
    for path in args.input:
        polytope, _ = polytope_from_document(_load_document(path))
        bodies.append(polytope)
    mults = (
        list(_parse_vector(args.multiplicities))
        if args.multiplicities
        else [1] * len(bodies)
    )
    if len(mults) != len(bodies):
        raise InvalidInput("one multiplicity per input required")
    value = mixed_volume(list(zip(bodies, mults)))
    return {"mixed_volume": rational_to_json(value)}


def _cmd_hrr(args, p: Polytope, t: ToricData) -> dict:
    coeffs = hrr_coefficients(t)
    return {"coefficients": [rational_to_json(c) for c in coeffs]}


def _cmd_rooftop_coeffs(args, p: Polytope, t: ToricData) -> dict:
    result = rooftop_coefficients(t, _parse_vector(args.v))
    out = {
        "c_prime": [rational_to_json(c) for c in result.values],
        "q": result.q,
        "formula_available": result.formula_available,
    }
    if result.formula_values is not None:
        out["formula_values"] = [rational_to_json(c) for c in result.formula_values]
    return out


def _cmd_delta(args, p: Polytope, t: ToricData) -> dict:
    diagnostics = {}
    if args.k is not None:
        value, argmin = delta_k(t, args.k)
        cls = classify(p)
        if p.dim == 2 and cls.reflexive and cls.delzant:
            del_pezzo_closed_form(t, args.k)  # raises on disagreement
            diagnostics["del_pezzo_form_checked"] = True
        return {
            "delta_k": rational_to_json(value),
            "k": args.k,
            "argmin_rays": list(argmin),
            "diagnostics": diagnostics,
        }
    value, argmin = delta(t)
    return {"delta": rational_to_json(value), "argmin_rays": list(argmin)}


def _cmd_delta_seq(args, p: Polytope, t: ToricData) -> dict:
    ks = [int(x) for x in _parse_vector(args.ks)]
    seq = delta_sequence(t, ks, order=args.order)
    return {
        "values": [
            {"k": v.k, "delta_k": rational_to_json(v.value), "argmin_rays": list(v.argmin)}
            for v in seq.values
        ],
        "delta": rational_to_json(seq.limit),
        "limit_argmin_rays": list(seq.limit_argmin),
        "dominant": {
            "num": seq.dominant.num.to_json(),
            "den": seq.dominant.den.to_json(),
            "rays": list(seq.dominant_rays),
        },
        "k0": seq.k0,
        "asymptotics": [rational_to_json(c) for c in seq.asymptotics.coefficients],
    }


def _cmd_df(args, p: Polytope, t: ToricData) -> dict:
    coeffs = df_coefficients(p, _parse_vector(args.v), args.order)
    return {"DF": [rational_to_json(c) for c in coeffs]}


def _cmd_fan(args, p: Polytope, t: ToricData) -> dict:
    fan = rooftop_fan(t, _parse_vector(args.v))
    return {"rays": [list(r) for r in fan.rays], "q": fan.q}


# ---------------------------------------------------------------------------
# rendering

def _approximate(value):
    """Decimal rendering of exact "p/q" strings; everything else unchanged."""
    if isinstance(value, str) and "/" in value:
        num, den = value.split("/")
        return float(Fraction(int(num), int(den)))
    if isinstance(value, list):
        return [_approximate(v) for v in value]
    if isinstance(value, dict):
        return {k: _approximate(v) for k, v in value.items()}
    return value


def _flatten(value) -> str:
    return json.dumps(value)


def _render_table(document: dict, approx: bool) -> str:
    rows = []
    outputs = document["outputs"]
    for key, value in outputs.items():
        rows.append((key, _flatten(value), _flatten(_approximate(value)) if approx else None))
    width = max((len(k) for k, _, _ in rows), default=0)
    vwidth = max((len(v) for _, v, _ in rows), default=0)
    lines = [f"command: {document['command']}"]
    if document.get("input"):
        lines.append(f"input:   {document['input']}")
    if approx:
        lines.append(f"{'field'.ljust(width)}  {'exact'.ljust(vwidth)}  approx (display only)")
    for key, value, approx_value in rows:
        line = f"{key.ljust(width)}  {value.ljust(vwidth)}"
        if approx_value is not None:
            line += f"  {approx_value}"
        lines.append(line.rstrip())
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# entry point

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbary",
        description="Exact quantized barycenters, Ehrhart expansions, and "
        "toric stability thresholds of lattice polytopes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, **kwargs):
        cmd = sub.add_parser(name, **kwargs)
        if name != "mixed-volume":
            cmd.add_argument("--input", help="JSON polytope document or bundled fixture name")
            cmd.add_argument("--rays", help="inline rays, e.g. '1,0;0,1;-1,-1'")
            cmd.add_argument("--offsets", help="inline offsets, e.g. '1,1,1'")
        cmd.add_argument("--table", action="store_true", help="render as an aligned table")
        cmd.add_argument(
            "--approx",
            action="store_true",
            help="add a decimal rendering (display only; results stay exact)",
        )
        return cmd

    add("count", help="lattice points of k*P").add_argument("--k", type=int, required=True)
    add("bck", help="quantized barycenter Bc_k").add_argument("--k", type=int, required=True)
    add("bc", help="volume, barycenter, and boundary data")
    cmd = add("ehrhart", help="counting polynomial coefficients")
    cmd = add("reciprocity", help="reciprocity checks up to --kmax")
    cmd.add_argument("--kmax", type=int, default=4)
    cmd = add("expand", help="asymptotic expansion of Bc_k")
    cmd.add_argument("--order", type=int, default=None)
    cmd = add("rooftop", help="rooftop polytope in a direction")
    cmd.add_argument("--v", required=True, help="direction vector, e.g. '1,0'")
    cmd.add_argument("--q", type=int, default=None, help="offset (default: canonical)")
    add("classify", help="reflexive / Delzant flags")
    cmd = sub.add_parser("mixed-volume", help="mixed volume of polytopes")
    cmd.add_argument("--input", action="append", help="polytope document (repeatable)")
    cmd.add_argument("--multiplicities", help="comma-separated multiplicities")
    cmd.add_argument("--table", action="store_true")
    cmd.add_argument("--approx", action="store_true")
    add("hrr", help="counting coefficients from the Bernoulli/mixed-volume formula")
    cmd = add("rooftop-coeffs", help="numerator coefficients of <Bc_k, v>")
    cmd.add_argument("--v", required=True)
    cmd = add("delta", help="stability threshold (delta_k with --k, else delta)")
    cmd.add_argument("--k", type=int, default=None)
    cmd = add("delta-seq", help="delta_k sequence, dominant function, expansion")
    cmd.add_argument("--ks", required=True, help="comma-separated dilations")
    cmd.add_argument("--order", type=int, default=2)
    cmd = add("df", help="Donaldson-Futaki coefficients in a direction")
    cmd.add_argument("--v", required=True)
    cmd.add_argument("--order", type=int, default=3)
    cmd = add("fan", help="rooftop fan rays and canonical offset")
    cmd.add_argument("--v", required=True)
    return parser


_HANDLERS = {
    "count": _cmd_count,
    "bck": _cmd_bck,
    "bc": _cmd_bc,
    "ehrhart": _cmd_ehrhart,
    "reciprocity": _cmd_reciprocity,
    "expand": _cmd_expand,
    "rooftop": _cmd_rooftop,
    "classify": _cmd_classify,
    "hrr": _cmd_hrr,
    "rooftop-coeffs": _cmd_rooftop_coeffs,
    "delta": _cmd_delta,
    "delta-seq": _cmd_delta_seq,
    "df": _cmd_df,
    "fan": _cmd_fan,
}


def execute(argv: Sequence[str]) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "mixed-volume":
            outputs = _cmd_mixed_volume(args)
            name = None
        else:
            polytope, toric, name = _resolve_input(args)
            outputs = _HANDLERS[args.command](args, polytope, toric)
        diagnostics = outputs.pop("diagnostics", {})
        document = {"command": args.command, "input": name, "outputs": outputs}
        if diagnostics:
            document["diagnostics"] = diagnostics
        if args.approx and not args.table:
            document["approx"] = _approximate(outputs)
        if args.table:
            print(_render_table(document, args.approx))
        else:
            print(json.dumps(document, indent=2))
        return 0
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 2
    except QbaryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(execute(sys.argv[1:]))


if __name__ == "__main__":
    main()
