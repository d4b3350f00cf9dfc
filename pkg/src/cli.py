"""Command-line front end: ``python -m src.cli [global flags] <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""
import argparse
import os
import sys
import time
from typing import Any, Dict, Optional, Sequence, Tuple

try:
    from .atlas import (Polarity, acyclic_signature_from_weights, atlas_from_signature, away_from_root_internal_atlas,
                        is_dissecting, is_triangulating)
    from .bijection import f_bar, f_table, invert_table, is_tiling, phi_inverse, phi_table
    from .catalog import load_entry
    from .config import apply_overrides, catalog_path, config, validate_config
    from .errors import InputError, LawrenceAtlasError, VerificationError
    from .formats import (GraphFile, atlas_to_json, dumps, f_table_to_json, family_to_json, graph_data,
                          matroid_from_graph_file, phi_table_to_json, read_atlas, read_family, read_graph_file,
                          read_heights, read_matroid, read_ribbon, read_signature, ribbon_from_json, write_text)
    from .fourientation import enumerate_classes
    from .lawrence import (Side, atlas_simplices, build_lawrence, classify_family, enumerate_maximal_simplices,
                           format_volume, polytope_volume, regular_triangulation_from_heights)
    from .logger import logger
    from .matroid import RepresentedMatroid, VectorKind
    from .ribbon import RibbonGraph, bernardi_external_atlas
    from .selftest import FULL, QUICK, run_selftest
    from .utils import edge_key, parse_edge_key, parse_vector
except ImportError:
    from atlas import (Polarity, acyclic_signature_from_weights, atlas_from_signature, away_from_root_internal_atlas,
                       is_dissecting, is_triangulating)
    from bijection import f_bar, f_table, invert_table, is_tiling, phi_inverse, phi_table
    from catalog import load_entry
    from config import apply_overrides, catalog_path, config, validate_config
    from errors import InputError, LawrenceAtlasError, VerificationError
    from formats import (GraphFile, atlas_to_json, dumps, f_table_to_json, family_to_json, graph_data,
                         matroid_from_graph_file, phi_table_to_json, read_atlas, read_family, read_graph_file,
                         read_heights, read_matroid, read_ribbon, read_signature, ribbon_from_json, write_text)
    from fourientation import enumerate_classes
    from lawrence import (Side, atlas_simplices, build_lawrence, classify_family, enumerate_maximal_simplices,
                          format_volume, polytope_volume, regular_triangulation_from_heights)
    from logger import logger
    from matroid import RepresentedMatroid, VectorKind
    from ribbon import RibbonGraph, bernardi_external_atlas
    from selftest import FULL, QUICK, run_selftest
    from utils import edge_key, parse_edge_key, parse_vector

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2


def load_input(path: Optional[str]) -> Tuple[RepresentedMatroid, Optional[GraphFile]]:
    """A graph JSON file, a whitespace matrix file, or the name of a catalog entry."""
    if not path:
        raise InputError("--input is required for this command", {})
    if not os.path.exists(path) and os.path.exists(catalog_path(f"{path}.json")):
        entry = load_entry(path)
        return entry.matroid(), entry
    if path.endswith(".json"):
        graph_file = read_graph_file(path)
        return matroid_from_graph_file(graph_file), graph_file
    return read_matroid(path), None


def _emit(args: argparse.Namespace, report: Dict[str, Any], artifact: Any = None) -> None:
    """Artifact goes to --output (report on stdout); without --output one combined document is printed."""
    if artifact is None:
        write_text(dumps(report), args.output)
    elif args.output:
        write_text(dumps(artifact), args.output)
        write_text(dumps(report), None)
    else:
        write_text(dumps({**report, "result": artifact}), None)


def _ribbon(args: argparse.Namespace, graph_file: Optional[GraphFile]) -> RibbonGraph:
    if graph_file is None:
        raise InputError("Bernardi atlases need a graph input", {})
    graph = graph_data(graph_file)
    if args.bernardi:
        return read_ribbon(args.bernardi, graph)
    stored = getattr(graph_file, "ribbon", None)
    if stored is not None:
        data = stored if isinstance(stored, dict) else stored.model_dump()
        return ribbon_from_json(data, graph, args.input)
    return RibbonGraph.default(graph, args.q_root or 1)


def cmd_info(args: argparse.Namespace) -> int:
    m, _ = load_input(args.input)
    report = {"n": m.n, "r": m.r, "bases": len(m.bases), "circuits": len(m.circuits),
              "cocircuits": len(m.cocircuits)}
    if m.n <= config.orientation_cap:
        report["classes"] = len(enumerate_classes(m))
    _emit(args, report)
    return EXIT_OK


def cmd_atlas(args: argparse.Namespace) -> int:
    m, graph_file = load_input(args.input)
    polarity = Polarity(args.polarity)
    if args.sigma:
        atlas = atlas_from_signature(m, read_signature(args.sigma, m))
    elif args.bernardi is not None:
        atlas = bernardi_external_atlas(_ribbon(args, graph_file), m)
    elif args.weights:
        kind = VectorKind.CIRCUIT if polarity == Polarity.EXTERNAL else VectorKind.COCIRCUIT
        atlas = atlas_from_signature(m, acyclic_signature_from_weights(m, parse_vector(args.weights), kind))
    else:
        atlas = away_from_root_internal_atlas(m, args.q_root)
    dissecting = is_dissecting(m, atlas)
    triangulating = is_triangulating(m, atlas)
    report: Dict[str, Any] = {"polarity": atlas.polarity.value, "bases": len(atlas),
                              "dissecting": dissecting.ok, "triangulating": triangulating.ok}
    for name, verdict in (("dissecting_witness", dissecting), ("triangulating_witness", triangulating)):
        if not verdict.ok:
            report[name] = verdict.witness
    _emit(args, report, atlas_to_json(atlas))
    return EXIT_OK


def cmd_map(args: argparse.Namespace) -> int:
    m, _ = load_input(args.input)
    if not args.atlas_ext or not args.atlas_int:
        raise InputError("map needs --atlas-ext and --atlas-int", {})
    a_ext, a_int = read_atlas(args.atlas_ext, m), read_atlas(args.atlas_int, m)
    if args.mode == "f":
        result = f_bar(m, a_ext, a_int)
        report: Dict[str, Any] = {"mode": "f", "bijective": result.bijective}
        if result.hypotheses is not None:
            report["hypotheses"] = result.hypotheses.to_dict()
        if result.collision:
            report["collision"] = {"basis_1": edge_key(result.collision[0]), "basis_2": edge_key(result.collision[1])}
            raise VerificationError("f-bar is not bijective", report)
        if result.hypotheses is not None and not result.hypotheses.hold:
            raise VerificationError("Atlas pair fails the bijection hypotheses", report)
        _emit(args, report, f_table_to_json(f_table(m, a_ext, a_int)))
        return EXIT_OK
    if args.mode == "phi":
        table = phi_table(m, a_ext, a_int)
        tiling = is_tiling(m, table)
        _emit(args, {"mode": "phi", "orientations": len(table), "bijective": True, "tiling": tiling},
              phi_table_to_json(table))
        return EXIT_OK if tiling else EXIT_VERIFICATION
    if args.subset is not None:
        o = phi_inverse(m, a_ext, a_int, parse_edge_key(args.subset, m.n))
        _emit(args, {"mode": "inverse", "subset": args.subset}, str(o))
        return EXIT_OK
    inverse = invert_table(phi_table(m, a_ext, a_int))
    _emit(args, {"mode": "inverse", "subsets": len(inverse)},
          {edge_key(s): str(o) for s, o in inverse.items()})
    return EXIT_OK


def cmd_lawrence(args: argparse.Namespace) -> int:
    m, _ = load_input(args.input)
    lm = build_lawrence(m, Side(args.side))
    if args.action == "simplices":
        simplices = enumerate_maximal_simplices(lm)
        _emit(args, {"side": lm.side.value, "simplices": len(simplices)}, family_to_json(simplices))
    elif args.action == "check":
        if not args.target:
            raise InputError("lawrence check needs a simplex family file", {})
        family = read_family(args.target)
        verdict = classify_family(lm, family)
        _emit(args, {"side": lm.side.value, "simplices": len(family), "dissection": verdict.dissection,
                     "triangulation": verdict.triangulation})
    elif args.action == "volume":
        count, a, d = polytope_volume(lm)
        _emit(args, {"side": lm.side.value, "dimension": lm.dimension, "simplex": format_volume(1, a, d),
                     "total": format_volume(count, a, d), "simplices": count})
    else:
        if not args.target:
            raise InputError("lawrence regular needs a heights file", {})
        atlas = regular_triangulation_from_heights(lm, read_heights(args.target))
        simplices = atlas_simplices(atlas)
        _emit(args, {"side": lm.side.value, "simplices": len(simplices), "atlas": atlas_to_json(atlas)},
              family_to_json(simplices))
    return EXIT_OK


def cmd_selftest(args: argparse.Namespace) -> int:
    report = run_selftest(args.scope)
    _emit(args, report.to_dict())
    return EXIT_OK if report.ok else EXIT_VERIFICATION


def _global_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", help="Graph JSON, matrix text file, or catalog entry name")
    parser.add_argument("--output", help="Write the result here instead of stdout")
    parser.add_argument("--no-verify", dest="verify", action="store_false",
                        help="Skip the bijection hypothesis checks")
    parser.add_argument("--threads", type=int, help="Worker threads for pairwise scans")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lawrence-atlas",
                                     description="Atlases, fourientation bijections and Lawrence polytopes of regular matroids.")
    _global_flags(parser)
    # subcommands accept the global flags too, without clobbering values given before them
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    _global_flags(common)
    sub = parser.add_subparsers(dest="command", required=True)

    info = sub.add_parser("info", parents=[common], help="Counts of bases, circuits, cocircuits and classes")
    info.set_defaults(handler=cmd_info)

    atlas = sub.add_parser("atlas", parents=[common], help="Build an atlas and report its verdicts")
    source = atlas.add_mutually_exclusive_group(required=True)
    source.add_argument("--sigma", help="Signature JSON file")
    source.add_argument("--bernardi", nargs="?", const="", help="Ribbon JSON file (default: the input's own ribbon)")
    source.add_argument("--weights", help="Comma-separated generic weights, e.g. 1,0")
    source.add_argument("--q-root", dest="q_root", type=int, help="Root vertex for the away-from-root atlas")
    atlas.add_argument("--polarity", choices=[p.value for p in Polarity], default=Polarity.EXTERNAL.value,
                       help="Atlas polarity for --weights")
    atlas.set_defaults(handler=cmd_atlas)

    mapping = sub.add_parser("map", parents=[common], help="Tables of f, φ or φ⁻¹")
    mapping.add_argument("--atlas-ext", dest="atlas_ext", help="External atlas JSON")
    mapping.add_argument("--atlas-int", dest="atlas_int", help="Internal atlas JSON")
    mapping.add_argument("--mode", choices=["f", "phi", "inverse"], default="f")
    mapping.add_argument("--subset", help="Edge list such as 1,3 for --mode inverse")
    mapping.set_defaults(handler=cmd_map)

    lawrence = sub.add_parser("lawrence", parents=[common], help="Lawrence polytope simplices, families and volumes")
    lawrence.add_argument("action", choices=["simplices", "check", "volume", "regular"])
    lawrence.add_argument("target", nargs="?", help="Family file for check, heights file for regular")
    lawrence.add_argument("--side", choices=[s.value for s in Side], default=Side.PRIMAL.value)
    lawrence.set_defaults(handler=cmd_lawrence)

    selftest = sub.add_parser("selftest", parents=[common], help="Run the invariant suite over the catalog")
    selftest.add_argument("--scope", choices=[QUICK, FULL], default=QUICK)
    selftest.set_defaults(handler=cmd_selftest)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    log = logger.bind(command=args.command)
    start = time.perf_counter()
    try:
        validate_config()
        apply_overrides(threads=args.threads, verify=None if args.verify else False)
        code = args.handler(args)
    except VerificationError as exc:
        log.warning("Verification failed", witness=exc.witness)
        print(dumps(exc.to_dict()), end="", file=sys.stderr)
        return EXIT_VERIFICATION
    except InputError as exc:
        log.error("Invalid input", detail=exc.message)
        print(dumps(exc.to_dict()), end="", file=sys.stderr)
        return EXIT_INPUT
    except (RuntimeError, LawrenceAtlasError) as exc:
        log.error("Configuration error", error=str(exc))
        print(dumps({"error": type(exc).__name__, "message": str(exc), "witness": {}}), end="", file=sys.stderr)
        return EXIT_INPUT
    log.info("Command finished", exit_code=code, elapsed=round(time.perf_counter() - start, 3))
    return code


if __name__ == "__main__":
    sys.exit(main())
