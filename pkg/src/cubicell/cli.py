"""Command-line interface.

All subcommands print deterministic JSON (schema version 1) unless a
markdown report is requested; exit codes signal verification failures so
the tool can gate a pipeline.  The catalog path comes from --catalog, the
CLV_CATALOG environment variable, or the packaged data file, in that
order.
"""

from __future__ import annotations

import argparse
import json
import sys

from .catalog import Catalog, CatalogError, load_catalog, verify_catalog
from .classifier import (
    DescriptorError,
    HyperplaneChoice,
    TripleDescriptor,
    classify,
)
from .curves import (
    DEFAULT_MAX_DEGREE,
    EnumerationError,
    enumerate_curve_classes,
    enumerate_curve_classes_all,
    enumerate_tuples,
)
from .homology import coker_theta, coker_xi_r3
from .lattice import DivClass
from .poly import parse_poly
from .replay import run_all_lemmas


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2, sort_keys=True, ensure_ascii=False)
    sys.stdout.write("\n")


def _load(args: argparse.Namespace, verify: bool = True) -> Catalog:
    return load_catalog(path=args.catalog, verify=verify)


def _parse_components(spec: str) -> list[tuple[DivClass, int]]:
    """Entries like ``3,-1,-1,-1,0,0,0`` joined by ``;`` with an optional
    ``*multiplicity`` suffix per entry."""
    out = []
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        mult = 1
        if "*" in chunk:
            chunk, mult_text = chunk.rsplit("*", 1)
            mult = int(mult_text)
        coeffs = tuple(int(v) for v in chunk.split(","))
        out.append((DivClass(coeffs), mult))
    if not out:
        raise ValueError("empty component specification")
    return out


def _group_json(group) -> dict:
    return {
        "free_rank": group.free_rank,
        "torsion": list(group.torsion),
        "display": str(group),
        "trivial": group.is_trivial,
    }


def cmd_catalog_verify(args: argparse.Namespace) -> int:
    catalog = _load(args, verify=False)
    report = verify_catalog(catalog)
    _emit(report.to_json())
    return 0 if report.passed else 1


def cmd_curves_enumerate(args: argparse.Namespace) -> int:
    catalog = _load(args)
    surface = catalog[args.surface]
    if args.degree is not None:
        solution = enumerate_curve_classes(surface, args.degree)
        payload = {
            "schema": 1,
            "surface": args.surface,
            "degree": args.degree,
            **solution.to_json(),
        }
    else:
        solutions = enumerate_curve_classes_all(surface, args.max_degree)
        payload = {
            "schema": 1,
            "surface": args.surface,
            "max_degree": args.max_degree,
            "by_degree": {
                str(n): sol.to_json() for n, sol in solutions.items() if sol.classes
            },
            "classes": sorted(
                [list(c.coeffs) for sol in solutions.values() for c in sol.classes]
            ),
        }
    _emit(payload)
    return 0


def cmd_tuples(args: argparse.Namespace) -> int:
    tuples = enumerate_tuples(args.n, genus=args.genus)
    _emit(
        {
            "schema": 1,
            "n": args.n,
            "genus": args.genus,
            "variant": "cuspidal" if args.cuspidal else "smooth",
            "tuples": [[n, a, list(bs)] for n, a, bs in tuples],
        }
    )
    return 0


def cmd_coker_theta(args: argparse.Namespace) -> int:
    catalog = _load(args)
    components = _parse_components(args.components)
    group = coker_theta(catalog[args.surface], components)
    _emit(
        {
            "schema": 1,
            "surface": args.surface,
            "components": [[list(c.coeffs), m] for c, m in components],
            "cokernel": _group_json(group),
            "admissible": group.is_trivial,
        }
    )
    return 0


def cmd_coker_xi(args: argparse.Namespace) -> int:
    decomposition = _parse_components(args.decomposition)
    result = coker_xi_r3(decomposition)
    _emit(
        {
            "schema": 1,
            "decomposition": [[list(c.coeffs), m] for c, m in decomposition],
            "injective": result.injective,
            "cokernel": _group_json(result.coker),
            "admissible": result.admissible,
        }
    )
    return 0


def _descriptor_from_json(payload: dict) -> TripleDescriptor:
    curve = payload["curve"]
    plane = payload["hyperplane"]
    components = tuple(
        (DivClass(tuple(entry["class"])), int(entry.get("multiplicity", 1)))
        for entry in plane.get("components", ())
    )
    incidence = tuple(int(v) for v in payload["incidence"])
    curve_class = curve.get("class")
    return TripleDescriptor(
        curve_genus=int(curve["genus"]),
        curve_degree=int(curve["degree"]),
        surface_id=payload["surface"],
        hyperplane=HyperplaneChoice(
            payload["surface"],
            parse_poly(plane["form"]),
            plane["f_type"],
            components,
        ),
        incidence=incidence,  # type: ignore[arg-type]
        sharp_c_cap_s1=int(payload.get("sharp_c_cap_s1", incidence[0])),
        b2_f=int(payload["b2_f"]),
        delta_iso=payload.get("delta_iso"),
        curve_class=DivClass(tuple(curve_class)) if curve_class else None,
    )


def cmd_classify(args: argparse.Namespace) -> int:
    catalog = _load(args)
    with open(args.input, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    outcome = classify(_descriptor_from_json(payload), catalog)
    _emit(outcome.to_json())
    return 0


def cmd_lemmas_run_all(args: argparse.Namespace) -> int:
    catalog = _load(args, verify=False)
    report = run_all_lemmas(catalog)
    if args.markdown:
        sys.stdout.write(report.to_markdown() + "\n")
    else:
        _emit(report.to_json())
    return min(len(report.failures), 125)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubicell",
        description="Exact verification toolkit for homology 3-cell complements "
        "in blow-ups of P^3 along smooth curves.",
    )
    parser.add_argument(
        "--catalog",
        help="catalog JSON path (default: $CLV_CATALOG, then the packaged file)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    catalog_cmd = sub.add_parser("catalog", help="catalog data checks")
    catalog_sub = catalog_cmd.add_subparsers(dest="subcommand", required=True)
    verify_cmd = catalog_sub.add_parser("verify", help="run every catalog invariant")
    verify_cmd.set_defaults(func=cmd_catalog_verify)

    curves_cmd = sub.add_parser("curves", help="divisor-class enumeration")
    curves_sub = curves_cmd.add_subparsers(dest="subcommand", required=True)
    enum_cmd = curves_sub.add_parser("enumerate", help="smooth rational curve classes")
    enum_cmd.add_argument("--surface", required=True, choices=["G1", "G2", "G4", "G5"])
    enum_cmd.add_argument("--degree", type=int, help="single anticanonical degree")
    enum_cmd.add_argument(
        "--max-degree",
        type=int,
        default=DEFAULT_MAX_DEGREE,
        help="scan degrees 1..N when --degree is omitted",
    )
    enum_cmd.set_defaults(func=cmd_curves_enumerate)

    tuples_cmd = sub.add_parser("tuples", help="raw degree/genus equation solutions")
    tuples_cmd.add_argument("--n", type=int, required=True)
    tuples_cmd.add_argument("--genus", type=int, default=0)
    tuples_cmd.add_argument(
        "--cuspidal",
        action="store_true",
        help="label the run as the cuspidal-cubic variant (same equations on "
        "the smooth strict transform)",
    )
    tuples_cmd.set_defaults(func=cmd_tuples)

    coker_cmd = sub.add_parser("coker", help="boundary cokernels")
    coker_sub = coker_cmd.add_subparsers(dest="subcommand", required=True)
    theta_cmd = coker_sub.add_parser("theta", help="rank-7 Picard cokernel")
    theta_cmd.add_argument("--surface", required=True)
    theta_cmd.add_argument(
        "--components",
        required=True,
        help="semicolon-separated class vectors a,b1,..,b6 with optional *mult",
    )
    theta_cmd.set_defaults(func=cmd_coker_theta)
    xi_cmd = coker_sub.add_parser("xi", help="homology cokernel on the ruled model")
    xi_cmd.add_argument(
        "--decomposition",
        required=True,
        help="semicolon-separated rank-2 classes a,b with optional *mult",
    )
    xi_cmd.set_defaults(func=cmd_coker_xi)

    classify_cmd = sub.add_parser("classify", help="classify a triple descriptor")
    classify_cmd.add_argument("--input", required=True, help="descriptor JSON file")
    classify_cmd.set_defaults(func=cmd_classify)

    lemmas_cmd = sub.add_parser("lemmas", help="replay recorded computations")
    lemmas_sub = lemmas_cmd.add_subparsers(dest="subcommand", required=True)
    run_cmd = lemmas_sub.add_parser("run-all", help="recompute everything")
    output = run_cmd.add_mutually_exclusive_group()
    output.add_argument("--json", action="store_true", default=True)
    output.add_argument("--markdown", action="store_true")
    run_cmd.set_defaults(func=cmd_lemmas_run_all)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CatalogError, DescriptorError, EnumerationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
