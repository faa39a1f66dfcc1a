"""Command-line interface.

Five subcommands: ``enumerate`` (boundary families and dimensions),
``verify-singularities`` (branchwise checks of the Gorenstein tables),
``check`` (smoothability decision for a JSON instance), ``intersect``
(the intersection-with-main catalog) and ``strata`` (the quartic stratum
table).  Output is byte-stable: TSV uses tabs and bare newlines, JSON is
sorted and two-space indented.

Exit codes: 0 success (including contained-in-main and smoothable),
1 a verification failed, 2 usage or validation error, 3 the instance is
not smoothable, 4 the family reduces to a smaller one.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from . import __version__
from .components import (
    BrE,
    D,
    E,
    EE,
    FamilySpecError,
    HypD,
    Main,
    OutOfRegimeError,
    dimension,
    enumerate_families,
    format_family,
    generic_dual_graph,
    parse_family,
)
from .instances import SCHEMA_ID, InstancePayloadError, loads_instance
from .polynomials import Polynomial
from .singularities import (
    presentation_residues,
    ribbon_genus,
    type_I_presentation,
    type_II_presentation,
    verify_presentation,
)
from .smoothability import (
    CONTAINED_IN_MAIN,
    NOT_SMOOTHABLE,
    REDUCES_TO,
    SMOOTHABLE,
    InstanceValidationError,
    decide,
    intersection_catalog,
)
from .strata import UNSUPPORTED, codim_diagnostic, strata_table

EX_OK = 0
EX_VERIFY_FAILED = 1
EX_USAGE = 2
EX_NOT_SMOOTHABLE = 3
EX_REDUCES = 4

_GREEN = "\x1b[32m"
_RED = "\x1b[31m"
_RESET = "\x1b[0m"


def _paint(text: str, good: bool, color: bool) -> str:
    if not color:
        return text
    return f"{_GREEN if good else _RED}{text}{_RESET}"


def _emit(lines) -> None:
    sys.stdout.write("\n".join(lines) + "\n")


def _emit_json(payload) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _fail_usage(message: str) -> int:
    sys.stderr.write(f"error: {message}\n")
    return EX_USAGE


_KIND_NAMES = {Main: "main", D: "D", E: "E", EE: "EE", BrE: "brE", HypD: "hypD"}


# --------------------------------------------------------------------------
# enumerate
# --------------------------------------------------------------------------


def _graph_summary(graph) -> str:
    verts = ";".join(
        f"{v.label}:{v.role}:g={v.genus}:w={v.weight}" for v in graph.vertices
    )
    edges = ";".join(f"{a}-{b}" for a, b in graph.edges)
    return f"{verts}|{edges or '-'}|b1={graph.first_betti()}"


def _cmd_enumerate(args) -> int:
    try:
        families = enumerate_families(args.r, args.d)
    except OutOfRegimeError as exc:
        return _fail_usage(str(exc))
    rows = []
    for fam in families:
        row = {
            "family": format_family(fam),
            "kind": _KIND_NAMES[type(fam)],
            "dimension": dimension(fam, args.r, args.d),
        }
        if args.graphs:
            row["graph"] = _graph_summary(generic_dual_graph(fam, args.d))
        rows.append(row)
    if args.format == "json":
        _emit_json(rows)
    else:
        keys = ["family", "kind", "dimension"] + (["graph"] if args.graphs else [])
        _emit("\t".join(str(r[k]) for k in keys) for r in rows)
    return EX_OK


# --------------------------------------------------------------------------
# verify-singularities
# --------------------------------------------------------------------------


def _linear_mutant(presentation):
    """Corrupt the first equation with a linear term the truncation cannot
    hide; the verifier is expected to notice."""
    eq = presentation.equations[0]
    names = sorted(presentation.generators)[:2]
    bump = eq
    for name in names:
        bump = bump + Polynomial.variable(name, eq.variables)
    return presentation.with_equations((bump,) + tuple(presentation.equations[1:]))


def _ribbon_sweep(max_tails: int):
    """One aggregate check per tail count: genus 2 for every multiplicity
    vector with entries up to 4."""
    from itertools import product

    for k in range(max_tails + 1):
        ok = all(
            ribbon_genus(k, mults) == 2
            for mults in product(range(1, 5), repeat=k)
        )
        yield {"table": "ribbon", "branches": k, "status": "ok" if ok else "fail"}


def _cmd_verify(args) -> int:
    jobs = []
    if args.table in ("I", "both"):
        jobs += [("I", m, type_I_presentation(m)) for m in range(1, args.max_branches + 1)]
    if args.table in ("II", "both"):
        jobs += [("II", m, type_II_presentation(m)) for m in range(2, args.max_branches + 1)]
    rows, failed = [], False
    for table, m, pres in jobs:
        if args.inject_mutant:
            pres = _linear_mutant(pres)
            bad = verify_presentation(pres)
            status = "mutant-missed" if bad else "mutant-detected"
            failed = failed or bad
        else:
            ok = verify_presentation(pres)
            status = "ok" if ok else "fail"
            failed = failed or not ok
        row = {"table": table, "branches": m, "status": status}
        if args.residues:
            row["residues"] = [repr(r) for r in presentation_residues(pres)]
        rows.append(row)
    if args.table == "both" and not args.inject_mutant:
        for row in _ribbon_sweep(args.max_branches):
            rows.append(row)
            failed = failed or row["status"] != "ok"
    if args.format == "json":
        _emit_json(rows)
    else:
        lines = []
        for r in rows:
            good = r["status"] in ("ok", "mutant-detected")
            line = f"{r['table']}\t{r['branches']}\t{_paint(r['status'], good, args.color)}"
            if args.residues:
                line += "\t" + ";".join(r["residues"])
            lines.append(line)
        _emit(lines)
    return EX_VERIFY_FAILED if failed else EX_OK


# --------------------------------------------------------------------------
# check
# --------------------------------------------------------------------------


def _verdict_payload(verdict) -> dict:
    return {
        "outcome": verdict.outcome,
        "condition": verdict.condition,
        "witness": verdict.witness.label if verdict.witness else None,
        "failed": verdict.failed,
        "reduces_to": format_family(verdict.reduces_to) if verdict.reduces_to else None,
        "trace": [[name, result] for name, result in verdict.trace],
    }


def _cmd_check(args) -> int:
    if args.print_schema:
        text = resources.files("g2maps.data").joinpath("instance_schema.json").read_text()
        sys.stdout.write(text)
        return EX_OK
    if args.instance is None:
        return _fail_usage("an instance file is required (or --print-schema)")
    try:
        if args.instance == "-":
            text = sys.stdin.read()
        else:
            with open(args.instance, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        return _fail_usage(str(exc))
    try:
        instance = loads_instance(text)
        verdict = decide(instance)
    except (InstancePayloadError, InstanceValidationError) as exc:
        return _fail_usage(str(exc))

    if args.format == "json":
        _emit_json(_verdict_payload(verdict))
    else:
        good = verdict.outcome in (SMOOTHABLE, CONTAINED_IN_MAIN)
        lines = [f"outcome\t{_paint(verdict.outcome, good, args.color)}"]
        if verdict.condition:
            lines.append(f"condition\t{verdict.condition}")
        if verdict.witness:
            lines.append(f"witness\t{verdict.witness.label}")
        if verdict.failed:
            lines.append(f"failed\t{verdict.failed}")
        if verdict.reduces_to:
            lines.append(f"reduces-to\t{format_family(verdict.reduces_to)}")
        lines += [f"trace\t{name}\t{result}" for name, result in verdict.trace]
        _emit(lines)

    return {
        SMOOTHABLE: EX_OK,
        CONTAINED_IN_MAIN: EX_OK,
        NOT_SMOOTHABLE: EX_NOT_SMOOTHABLE,
        REDUCES_TO: EX_REDUCES,
    }[verdict.outcome]


# --------------------------------------------------------------------------
# intersect
# --------------------------------------------------------------------------


def _intersect_rows(records):
    rows = []
    for rec in records:
        if rec.contained_in_main:
            comps = "contained"
        else:
            comps = ",".join(
                f"{c.dimension}:{c.witness.label}" for c in rec.components
            )
        rows.append(
            {
                "family": format_family(rec.family),
                "dimension": rec.family_dimension,
                "intersection": comps,
            }
        )
    return rows


def _cmd_intersect(args) -> int:
    catalog = intersection_catalog()
    if args.family is not None:
        try:
            fam = parse_family(args.family)
        except FamilySpecError as exc:
            return _fail_usage(str(exc))
        if isinstance(fam, Main):
            # the whole catalog lives inside the closure of main
            dim = dimension(fam, 2, 4)
            if args.format == "json":
                _emit_json([{"family": "main", "dimension": dim, "intersection": "itself"}])
            else:
                _emit([f"main\t{dim}\titself"])
            return EX_OK
        matches = [rec for rec in catalog if rec.family == fam]
        if not matches:
            from .components import is_degenerate_bridge, reduction_target

            if is_degenerate_bridge(fam):
                target = reduction_target(fam)
                sys.stdout.write(f"reduces-to\t{format_family(target)}\n")
                return EX_REDUCES
            return _fail_usage(f"no intersection record for {args.family}")
        catalog = matches
    rows = _intersect_rows(catalog)
    if args.format == "json":
        _emit_json(rows)
    else:
        _emit("\t".join(str(r[k]) for k in ("family", "dimension", "intersection")) for r in rows)
    return EX_OK


# --------------------------------------------------------------------------
# strata
# --------------------------------------------------------------------------


def _stratum_fields(record) -> dict:
    return {
        "reducibility": record.reducibility,
        "genera": ",".join(str(g) for g in record.genera) if record.genera else "-",
        "points": record.singular_points if record.singular_points is not None else "-",
        "configuration": record.configuration_label(),
        "dimension": record.dimension,
        "flags": ",".join(record.flags) if record.flags else "-",
    }


def _diagnostic_field(record) -> str:
    diag = codim_diagnostic(record)
    if diag is UNSUPPORTED:
        return "unsupported"
    if diag.deviation == 0:
        return "0"
    return f"{diag.deviation:+d}"


_FILTER_KEYS = ("reducibility", "configuration", "points", "dimension", "flags")


def _parse_filters(pairs):
    filters = []
    for raw in pairs or ():
        key, sep, value = raw.partition("=")
        if not sep or key not in _FILTER_KEYS:
            raise ValueError(
                f"filters look like key=value with key one of {', '.join(_FILTER_KEYS)}"
            )
        filters.append((key, value))
    return filters


def _matches(record, filters) -> bool:
    fields = _stratum_fields(record)
    for key, value in filters:
        if key == "configuration":
            want = sorted(v.strip() for v in value.split(",") if v.strip())
            have = sorted(s.label for s in record.configuration)
            if want != have:
                return False
        elif str(fields[key]) != value:
            return False
    return True


def _cmd_strata(args) -> int:
    try:
        filters = _parse_filters(args.filter)
    except ValueError as exc:
        return _fail_usage(str(exc))
    reduced = [r for r in strata_table() if not r.non_reduced]
    annotations = [r for r in strata_table() if r.non_reduced]
    rows = [r for r in reduced if _matches(r, filters)]

    def encode(record):
        fields = _stratum_fields(record)
        if args.diagnostics:
            fields["deviation"] = _diagnostic_field(record)
        return fields

    if args.format == "json":
        _emit_json({
            "rows": [encode(r) for r in rows],
            "non_reduced": [encode(r) for r in annotations],
        })
    else:
        keys = ["reducibility", "genera", "points", "configuration", "dimension", "flags"]
        if args.diagnostics:
            keys.append("deviation")
        lines = ["\t".join(str(encode(r)[k]) for k in keys) for r in rows]
        lines += ["\t".join(str(encode(r)[k]) for k in keys) for r in annotations]
        _emit(lines)
    return EX_OK


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="g2maps",
        description="Exact boundary-family and smoothability computations "
        "for degree-4 genus-2 maps to the plane.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list boundary families with dimensions")
    p.add_argument("--r", type=int, default=2, help="target projective space dimension (default 2)")
    p.add_argument("--d", type=int, default=4, help="map degree (default 4)")
    p.add_argument("--graphs", action="store_true", help="append a dual-graph summary column")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser(
        "verify-singularities",
        help="check the Gorenstein tables branch by branch",
        description="Verifies each tabulated presentation modulo its truncation "
        "ideal. --inject-mutant corrupts every first equation with a linear "
        "term and expects the verifier to notice; a mutant slipping through "
        "is the failure case.",
    )
    p.add_argument("--table", choices=("I", "II", "both"), default="both")
    p.add_argument("--max-branches", type=int, default=6, metavar="M")
    p.add_argument("--inject-mutant", action="store_true")
    p.add_argument("--residues", action="store_true", help="show equation residues")
    p.add_argument("--color", action="store_true", help="colorize statuses")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("check", help="decide smoothability for a JSON instance")
    p.add_argument("instance", nargs="?", help="instance file ('-' for stdin)")
    p.add_argument("--color", action="store_true", help="colorize the outcome")
    p.add_argument("--print-schema", action="store_true", help="print the instance schema and exit")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("intersect", help="intersection-with-main catalog")
    p.add_argument("--family", help="restrict to one family string")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=_cmd_intersect)

    p = sub.add_parser(
        "strata",
        help="quartic stratum table",
        description="Prints the stratum table; filters apply to the reduced "
        "rows, and the non-reduced rows are always appended as annotations.",
    )
    p.add_argument(
        "--filter",
        action="append",
        metavar="KEY=VALUE",
        help=f"restrict rows; keys: {', '.join(_FILTER_KEYS)} (repeatable)",
    )
    p.add_argument("--diagnostics", action="store_true", help="append the codimension deviation column")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=_cmd_strata)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
