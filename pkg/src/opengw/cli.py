"""Command-line surface: fan ingestion, subcommands, deterministic output.

Subcommands: validate, superpotential, invariants, glue, classify,
monodromy, eval, oracle.  Input fans are JSON documents; all rationals in
files and flags are exact, written as integers or "p/q" strings, never
floats.  Output (table, csv, or json) is byte-deterministic for identical
inputs.  Exit codes: 0 success, 1 domain error, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from .chambers import ChamberPoint, CYFanRays, classify_point, monodromy_matrix
from .errors import (
    DimensionMismatch,
    DomainError,
    NonPrimitiveRay,
    ParseError,
    SchemaError,
)
from .fan import EnergyValues, FanSpec, class_name, validate_fan
from .novikov import NovikovScalar, assign_energies, evaluate
from .series import ClassSeries, from_records, to_records
from .wallcross import (
    Ambient,
    Chart,
    Direction,
    InvariantTable,
    apply_gluing,
    chekanov_superpotential,
    clifford_superpotential,
    closed_form_invariant,
    invariant_table,
    wall_crossing_factor,
)

CHAMBERS = {"plus": Chart.CLIFFORD, "minus": Chart.CHEKANOV}
AMBIENTS = {"open": Ambient.OPEN, "compact": Ambient.COMPACT}
DIRECTIONS = {
    "plus-to-minus": Direction.PLUS_TO_MINUS,
    "minus-to-plus": Direction.MINUS_TO_PLUS,
}


# input parsing

def _load_json(source: str):
    try:
        if source == "-":
            text = sys.stdin.read()
        else:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {source}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def _require_keys(doc, allowed: set, required: set, what: str) -> dict:
    if not isinstance(doc, dict):
        raise SchemaError(f"{what} must be a JSON object")
    unknown = set(doc) - allowed
    if unknown:
        raise SchemaError(f"{what}: unknown keys {sorted(unknown)}")
    missing = required - set(doc)
    if missing:
        raise SchemaError(f"{what}: missing keys {sorted(missing)}")
    return doc


def _as_int(v, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"{what} must be an integer, got {v!r}")
    return v


def _as_int_vec(v, length: int, what: str) -> tuple[int, ...]:
    if not isinstance(v, list) or len(v) != length:
        raise SchemaError(f"{what} must be an array of {length} integers, got {v!r}")
    return tuple(_as_int(x, f"{what} entry") for x in v)


def _as_rational(v, what: str) -> Fraction:
    # exactness is the product: integers and "p/q" strings only, no floats
    if isinstance(v, bool) or isinstance(v, float):
        raise SchemaError(f"{what} must be an integer or 'p/q' string, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"{what}: bad rational {v!r}: {exc}") from exc
    raise SchemaError(f"{what} must be an integer or 'p/q' string, got {v!r}")


def _energies_from_doc(doc) -> EnergyValues:
    _require_keys(doc, {"beta_hat", "gamma", "H"}, {"beta_hat"}, "energies")
    gamma = doc.get("gamma", [])
    if not isinstance(gamma, list):
        raise SchemaError("energies: gamma must be an array")
    h = doc.get("H")
    if h is not None and not isinstance(h, list):
        raise SchemaError("energies: H must be an array")
    return EnergyValues(
        beta_hat=_as_rational(doc["beta_hat"], "energies: beta_hat"),
        gamma=tuple(_as_rational(x, "energies: gamma entry") for x in gamma),
        h=None if h is None else tuple(_as_rational(x, "energies: H entry") for x in h),
    )


def parse_fan_spec(source: str) -> FanSpec:
    """Read a fan document from a path (or '-' for stdin).

    Schema errors (unknown keys, wrong arity) and JSON syntax errors are
    usage-level; a syntactically fine ray that is not primitive is a domain
    error.
    """
    doc = _load_json(source)
    _require_keys(
        doc, {"n", "extra_rays", "max_cones", "energies"}, {"n", "extra_rays"}, "fan spec"
    )
    n = _as_int(doc["n"], "n")
    if n < 1:
        raise SchemaError(f"n must be >= 1, got {n}")
    if not isinstance(doc["extra_rays"], list):
        raise SchemaError("extra_rays must be an array of integer arrays")
    rays = tuple(
        _as_int_vec(r, n, f"extra_rays[{i}]") for i, r in enumerate(doc["extra_rays"])
    )
    for i, r in enumerate(rays):
        if math.gcd(*(abs(x) for x in r)) != 1:
            raise NonPrimitiveRay(f"extra ray {list(r)} is not primitive")
    cones = None
    if "max_cones" in doc:
        if not isinstance(doc["max_cones"], list):
            raise SchemaError("max_cones must be an array of integer arrays")
        cones = tuple(
            _as_int_vec(c, n, f"max_cones[{i}]") for i, c in enumerate(doc["max_cones"])
        )
    energies = None
    if "energies" in doc:
        energies = _energies_from_doc(doc["energies"])
    return FanSpec(n, rays, cones, energies)


def parse_scalar_literal(text: str) -> NovikovScalar:
    """Parse scalar literals like '2', 'T^1/2', '1 - T + 2*T^3/2', 'T^-1'."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty scalar literal")
    parts = []
    start = 0
    for i in range(1, len(s)):
        # a sign after ^, *, / or another sign belongs to the number
        if s[i] in "+-" and s[i - 1] not in "^*/+-":
            parts.append(s[start:i])
            start = i
    parts.append(s[start:])
    pairs = []
    for part in parts:
        sign = Fraction(1)
        if part and part[0] in "+-":
            if part[0] == "-":
                sign = -sign
            part = part[1:]
        try:
            if "T" in part:
                coeff_txt, _, exp_txt = part.partition("T")
                if coeff_txt.endswith("*"):
                    coeff_txt = coeff_txt[:-1]
                coeff = Fraction(coeff_txt) if coeff_txt else Fraction(1)
                if exp_txt == "":
                    e = Fraction(1)
                elif exp_txt.startswith("^"):
                    e = Fraction(exp_txt[1:])
                else:
                    raise ValueError(f"expected ^ after T, got {exp_txt!r}")
            else:
                coeff = Fraction(part)
                e = Fraction(0)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar literal {text!r}: {exc}") from exc
        pairs.append((e, sign * coeff))
    return NovikovScalar.from_terms(pairs)


def _parse_rational_list(text: str, what: str) -> tuple[Fraction, ...]:
    s = text.strip()
    if not s:
        return ()
    try:
        return tuple(Fraction(x.strip()) for x in s.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad {what} {text!r}: {exc}") from exc


def _parse_series_doc(doc, spec: FanSpec) -> ClassSeries:
    _require_keys(doc, {"n", "m", "terms"}, {"n", "m", "terms"}, "series")
    n = _as_int(doc["n"], "series: n")
    m = _as_int(doc["m"], "series: m")
    if n != spec.n or m != spec.m:
        raise DimensionMismatch(
            f"series shape ({n},{m}) does not match fan ({spec.n},{spec.m})"
        )
    if not isinstance(doc["terms"], list):
        raise SchemaError("series: terms must be an array")
    return from_records(n, m, doc["terms"])


# rendering

def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _table_text(header, rows) -> str:
    cells = [[str(c) for c in row] for row in [list(header)] + [list(r) for r in rows]]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    lines = []
    for row in cells:
        line = "  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()
        lines.append(line)
    return "\n".join(lines) + "\n"


def _series_columns(n: int, m: int) -> list[str]:
    return (
        ["b"]
        + [f"g_{k}" for k in range(1, n)]
        + [f"h_{a}" for a in range(1, m + 1)]
    )


def render_series(s: ClassSeries, fmt: str) -> str:
    if fmt == "json":
        return _json_text({"n": s.n, "m": s.m, "terms": to_records(s)})
    if fmt == "csv":
        header = _series_columns(s.n, s.m) + ["coeff"]
        rows = [[c.b, *c.g, *c.h, str(q)] for c, q in s.items()]
        return _csv_text(header, rows)
    rows = [[class_name(c), str(q)] for c, q in s.items()]
    return _table_text(["class", "coeff"], rows)


def render_invariants(table: InvariantTable, spec: FanSpec, fmt: str) -> str:
    if fmt == "json":
        return _json_text(
            [
                {
                    "name": row.name,
                    "b": row.cls.b,
                    "g": list(row.cls.g),
                    "h": list(row.cls.h),
                    "maslov": row.maslov,
                    "n_beta": int(row.value),
                }
                for row in table
            ]
        )
    if fmt == "csv":
        header = _series_columns(spec.n, spec.m) + ["maslov", "n_beta"]
        rows = [[row.cls.b, *row.cls.g, *row.cls.h, row.maslov, int(row.value)] for row in table]
        return _csv_text(header, rows)
    rows = [[row.name, row.maslov, int(row.value)] for row in table]
    return _table_text(["class", "maslov", "n_beta"], rows)


def render_validation(report, fmt: str) -> str:
    checks = [
        ("primitive", report.primitive_ok),
        ("smooth", report.smooth_ok),
        ("complete", report.complete_ok),
        ("fano", report.fano_ok),
        ("overall", report.all_ok),
    ]
    if fmt == "json":
        return _json_text(
            {
                "primitive_ok": report.primitive_ok,
                "smooth_ok": report.smooth_ok,
                "complete_ok": report.complete_ok,
                "fano_ok": report.fano_ok,
                "all_ok": report.all_ok,
                "diagnostics": list(report.diagnostics),
            }
        )
    if fmt == "csv":
        rows = [[name, "ok" if ok else "fail"] for name, ok in checks]
        rows += [["diagnostic", d] for d in report.diagnostics]
        return _csv_text(["check", "result"], rows)
    body = _table_text(
        ["check", "result"], [[name, "ok" if ok else "fail"] for name, ok in checks]
    )
    if report.diagnostics:
        body += "".join(f"  - {d}\n" for d in report.diagnostics)
    return body


def render_matrix(mat, fmt: str) -> str:
    if fmt == "json":
        return _json_text([list(row) for row in mat])
    if fmt == "csv":
        return _csv_text([f"c_{j}" for j in range(1, len(mat[0]) + 1)], [list(r) for r in mat])
    width = max(len(str(x)) for row in mat for x in row)
    lines = ["  ".join(str(x).rjust(width) for x in row) for row in mat]
    return "\n".join(lines) + "\n"


def render_scalar(x: NovikovScalar, fmt: str) -> str:
    if fmt == "json":
        return _json_text(
            {
                "terms": [
                    {"exponent": str(e), "coefficient": str(c)} for e, c in x.terms
                ],
                "cutoff": None if x.cutoff is None else str(x.cutoff),
            }
        )
    if fmt == "csv":
        return _csv_text(["exponent", "coefficient"], [[str(e), str(c)] for e, c in x.terms])
    return str(x) + "\n"


# subcommands

def _cmd_validate(args) -> str:
    spec = parse_fan_spec(args.file)
    return render_validation(validate_fan(spec), args.format)


def _superpotential(spec: FanSpec, chamber: str, ambient: str):
    make = {
        Chart.CLIFFORD: clifford_superpotential,
        Chart.CHEKANOV: chekanov_superpotential,
    }[CHAMBERS[chamber]]
    return make(spec, AMBIENTS[ambient])


def _cmd_superpotential(args) -> str:
    spec = parse_fan_spec(args.file)
    w = _superpotential(spec, args.chamber, args.ambient)
    return render_series(w.series, args.format)


def _cmd_invariants(args) -> str:
    spec = parse_fan_spec(args.file)
    w = _superpotential(spec, args.chamber, args.ambient)
    return render_invariants(invariant_table(w), spec, args.format)


def _cmd_glue(args) -> str:
    spec = parse_fan_spec(args.file)
    s = _parse_series_doc(_load_json(args.input), spec)
    gd = wall_crossing_factor(spec, DIRECTIONS[args.direction], args.truncate)
    return render_series(apply_gluing(spec, s, gd), args.format)


def _cmd_classify(args) -> str:
    lam = _parse_rational_list(args.lam, "--lambda")
    q2 = _as_cli_rational(args.q2, "--q2")
    chamber = classify_point(args.n, ChamberPoint(lam, q2))
    return f"{chamber}\n"


def _as_cli_rational(text: str, what: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad {what} {text!r}: {exc}") from exc


def _cmd_monodromy(args) -> str:
    doc = _load_json(args.rays)
    _require_keys(doc, {"rays", "constants", "m0"}, {"rays"}, "rays")
    if not isinstance(doc["rays"], list) or not doc["rays"]:
        raise SchemaError("rays must be a nonempty array of integer arrays")
    dim = len(doc["rays"][0]) if isinstance(doc["rays"][0], list) else 0
    rays = [_as_int_vec(r, dim, f"rays[{i}]") for i, r in enumerate(doc["rays"])]
    constants = None
    if "constants" in doc:
        if not isinstance(doc["constants"], list):
            raise SchemaError("constants must be an array")
        constants = [_as_rational(c, "constants entry") for c in doc["constants"]]
    m0 = _as_int_vec(doc["m0"], dim, "m0") if "m0" in doc else None
    fan_rays = CYFanRays(tuple(rays), None if constants is None else tuple(constants), m0)
    return render_matrix(monodromy_matrix(fan_rays, args.i, args.j), args.format)


def _cmd_eval(args) -> str:
    spec = parse_fan_spec(args.file)
    values = None
    if args.energies is not None:
        try:
            doc = json.loads(args.energies)
        except json.JSONDecodeError as exc:
            raise ParseError(
                f"--energies: line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
        values = _energies_from_doc(doc)
    ea = assign_energies(spec, values)
    point = [parse_scalar_literal(t) for t in args.point.split(",")]
    w = _superpotential(spec, args.chamber, args.ambient)
    return render_scalar(evaluate(w.series, ea, point), args.format)


def _cmd_oracle(args) -> str:
    family = args.family.replace("-", "_")
    params: dict = {}
    if args.n is not None:
        params["n"] = args.n
    if args.r is not None:
        params["r"] = args.r
    if args.beta_hat:
        params["beta_hat"] = True
    else:
        if args.branch is not None:
            params["branch"] = args.branch
        if args.k is not None:
            ints = tuple(int(x) for x in _parse_rational_list(args.k, "--k"))
            params["k"] = ints[0] if family == "f1" and len(ints) == 1 else ints
    return f"{closed_form_invariant(family, params)}\n"


def _add_format(p: argparse.ArgumentParser):
    p.add_argument(
        "--format", choices=["table", "csv", "json"], default="table",
        help="output format (default: table)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opengw",
        description="Superpotentials and open Gromov-Witten invariants of "
        "toric Fano compactifications of C^n.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a fan: primitive, smooth, complete, Fano")
    p.add_argument("file", help="fan spec JSON (or - for stdin)")
    _add_format(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("superpotential", help="chamber superpotential as a class series")
    p.add_argument("file")
    p.add_argument("--chamber", choices=sorted(CHAMBERS), required=True)
    p.add_argument("--ambient", choices=sorted(AMBIENTS), required=True)
    _add_format(p)
    p.set_defaults(func=_cmd_superpotential)

    p = sub.add_parser("invariants", help="one-pointed disk counts (Chekanov side by default)")
    p.add_argument("file")
    p.add_argument("--chamber", choices=sorted(CHAMBERS), default="minus")
    p.add_argument("--ambient", choices=sorted(AMBIENTS), default="compact")
    _add_format(p)
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("glue", help="apply the wall-crossing map to a series file")
    p.add_argument("file")
    p.add_argument("--input", required=True, help="series JSON file")
    p.add_argument("--direction", choices=sorted(DIRECTIONS), required=True)
    p.add_argument("--truncate", type=int, required=True, help="gamma-degree bound")
    _add_format(p)
    p.set_defaults(func=_cmd_glue)

    p = sub.add_parser("classify", help="chamber of a fibration base point")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", default="", help="comma-separated rationals")
    p.add_argument("--q2", required=True, help="critical coordinate, rational")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("monodromy", help="wall-crossing monodromy matrix")
    p.add_argument("--rays", required=True, help="rays JSON file")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=_cmd_monodromy)

    p = sub.add_parser("eval", help="evaluate a superpotential at a torus point")
    p.add_argument("file")
    p.add_argument("--energies", help="inline JSON, overrides the file's energies")
    p.add_argument("--point", required=True, help="comma-separated scalar literals")
    p.add_argument("--chamber", choices=sorted(CHAMBERS), default="minus")
    p.add_argument("--ambient", choices=sorted(AMBIENTS), default="compact")
    _add_format(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("oracle", help="closed-form invariant value")
    p.add_argument("family", choices=["cpn", "cp-product", "f1"])
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--branch", choices=["H1", "H2"])
    p.add_argument("--k", help="comma-separated integers")
    p.add_argument("--beta-hat", action="store_true", dest="beta_hat")
    p.set_defaults(func=_cmd_oracle)

    return parser


_VALUE_FLAGS = {
    "--ambient", "--branch", "--chamber", "--direction", "--energies",
    "--format", "--i", "--input", "--j", "--k", "--lambda", "--n", "--point",
    "--q2", "--r", "--rays", "--truncate",
}


def _merge_negative_values(argv: list[str]) -> list[str]:
    # argparse mistakes values like "-1,2" for option strings; fold them
    # into --flag=value form so negative rationals work as flag values
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (
            tok in _VALUE_FLAGS
            and nxt is not None
            and nxt.startswith("-")
            and not nxt.startswith("--")
        ):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = _build_parser()
    try:
        args = parser.parse_args(_merge_negative_values(list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = args.func(args)
    except (ParseError, SchemaError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return 0


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
