"""Batch front end: validate, infer, sweep, combine, export-dot, serve.

Exit codes: 0 success (fixed point or limit cycle for infer), 1 bad
input or file, 2 unknown label / dimension mismatch, 3 no convergence
within the iteration cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from cogmap.inference import (
    DimensionMismatch,
    ThresholdPolicy,
    hidden_pattern,
    relational_hidden_pattern,
    sweep,
)
from cogmap.io_formats import (
    MapDocumentError,
    Scenario,
    UnknownLabelError,
    bundled_map_ids,
    export_dot,
    load_scenario,
    resolve_initial,
    resolve_map_argument,
    save_map,
    write_map_file,
)
from cogmap.model import CognitiveMap, RelationalMap, combine, validate
from cogmap.reports import (
    format_run_table,
    format_sweep_table,
    format_trace,
    report_json,
    run_report,
    sweep_report,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_LABEL = 2
EXIT_NOT_CONVERGED = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cogmap",
        description="Inference and scenario exploration for cognitive and relational maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_map(p):
        p.add_argument("--map", required=True, help="bundled map id, .cogmap.json path or .csv path")
        p.add_argument(
            "--kind",
            choices=["cognitive", "relational"],
            default="cognitive",
            help="matrix kind when importing a CSV file (default cognitive)",
        )

    p = sub.add_parser("validate", help="report every violated map invariant")
    add_map(p)

    p = sub.add_parser("infer", help="run one scenario to its hidden pattern")
    p.add_argument("--map", help="bundled map id, .cogmap.json path or .csv path")
    p.add_argument(
        "--kind",
        choices=["cognitive", "relational"],
        default="cognitive",
        help="matrix kind when importing a CSV file (default cognitive)",
    )
    p.add_argument("--scenario", metavar="PATH",
                   help=".scenario.json document; explicit flags override its fields")
    p.add_argument("--on", action="append", default=[], metavar="LABEL",
                   help="node to switch ON (repeatable)")
    p.add_argument("--clamp", action="append", default=None, metavar="MODE|LABEL",
                   help="'auto' (default: clamp the --on nodes), 'none', or labels to hold at 1")
    p.add_argument("--side", choices=["domain", "range"], default=None,
                   help="starting side for relational maps (default domain)")
    p.add_argument("--threshold", default=None, help="threshold k (default 1)")
    p.add_argument("--max-iters", type=int, default=None)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.add_argument("--trace", action="store_true",
                   help="include the trajectory (tables also show raw pre-threshold sums)")
    p.add_argument("--plot", metavar="PATH", help="write a trajectory heatmap figure")

    p = sub.add_parser("sweep", help="hidden pattern from every single-node start")
    add_map(p)
    p.add_argument("--threshold", default="1")
    p.add_argument("--max-iters", type=int, default=1000)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.add_argument("--plot", metavar="PATH", help="write a sweep heatmap figure")

    p = sub.add_parser("combine", help="combine several experts' maps into one document")
    p.add_argument("--maps", nargs="+", required=True, metavar="MAP")
    p.add_argument("--weights", help="comma-separated nonnegative expert weights")
    p.add_argument("--normalize", action="store_true", help="divide by the number of maps")
    p.add_argument("--out", metavar="PATH", help="output document path (default stdout)")

    p = sub.add_parser("export-dot", help="write the directed graph as DOT")
    add_map(p)
    p.add_argument("--out", metavar="PATH", help="output path (default stdout)")

    p = sub.add_parser("serve", help="serve the HTTP API (and web UI when built)")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data-dir", help="override the bundled dataset directory")
    p.add_argument("--persist-dir", help="mirror uploaded maps into this directory")
    p.add_argument("--static-dir", help="directory of built web UI assets to serve at /")

    p = sub.add_parser("list", help="list bundled map ids")
    return parser


def _parse_scalar_arg(text):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise MapDocumentError([f"bad scalar {text!r}: {exc}"]) from exc
    return value


def _scenario_from_args(args) -> Scenario:
    base = Scenario()
    if args.scenario:
        path = Path(args.scenario)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise MapDocumentError([f"cannot read {path}: {exc}"]) from exc
        except json.JSONDecodeError as exc:
            raise MapDocumentError([f"{path} is not valid JSON: {exc}"]) from exc
        base = load_scenario(doc)
    clamp = args.clamp
    if clamp == ["auto"]:
        clamp = "auto"
    elif clamp == ["none"]:
        clamp = "none"
    return Scenario(
        on=args.on or base.on,
        clamp=base.clamp if clamp is None else clamp,
        side=args.side or base.side,
        threshold=base.threshold if args.threshold is None else _parse_scalar_arg(args.threshold),
        max_iters=base.max_iters if args.max_iters is None else args.max_iters,
        map_ref=base.map_ref,
    )


def cmd_validate(args) -> int:
    mapping = resolve_map_argument(args.map, args.kind)
    findings = validate(mapping)
    if findings:
        for finding in findings:
            print(finding)
        return EXIT_INPUT
    kind = mapping.kind
    if isinstance(mapping, CognitiveMap):
        print(f"OK: {kind} with {mapping.node_count} nodes")
    else:
        print(f"OK: {kind} with {mapping.domain_count} domain and {mapping.range_count} range nodes")
    return EXIT_OK


def cmd_infer(args) -> int:
    scenario = _scenario_from_args(args)
    map_ref = args.map or scenario.map_ref
    if not map_ref:
        raise MapDocumentError(["no map given: pass --map or a scenario with a 'map' field"])
    mapping = resolve_map_argument(map_ref, args.kind)
    policy = ThresholdPolicy(scenario.threshold)
    initial = resolve_initial(mapping, scenario)
    if isinstance(mapping, RelationalMap):
        pattern = relational_hidden_pattern(
            mapping, initial, scenario.side, policy, scenario.max_iters
        )
    else:
        pattern = hidden_pattern(mapping, initial, policy, scenario.max_iters)
    if args.format == "json":
        sys.stdout.write(report_json(run_report(mapping, pattern, include_trajectory=args.trace)))
    else:
        sys.stdout.write(format_run_table(mapping, pattern))
        if args.trace:
            sys.stdout.write(format_trace(mapping, pattern, policy))
    if args.plot:
        from cogmap.plotting import save_trajectory_figure

        save_trajectory_figure(mapping, pattern, args.plot)
    return EXIT_OK if pattern.kind != "not_converged" else EXIT_NOT_CONVERGED


def cmd_sweep(args) -> int:
    mapping = resolve_map_argument(args.map, args.kind)
    if not isinstance(mapping, CognitiveMap):
        raise MapDocumentError(["sweep requires a cognitive map"])
    policy = ThresholdPolicy(_parse_scalar_arg(args.threshold))
    entries = sweep(mapping, policy, args.max_iters)
    if args.format == "json":
        sys.stdout.write(report_json(sweep_report(mapping, entries)))
    else:
        sys.stdout.write(format_sweep_table(mapping, entries))
    if args.plot:
        from cogmap.plotting import save_sweep_figure

        save_sweep_figure(mapping, entries, args.plot)
    return EXIT_OK


def cmd_combine(args) -> int:
    maps = [resolve_map_argument(ref) for ref in args.maps]
    for ref, m in zip(args.maps, maps):
        if not isinstance(m, CognitiveMap):
            raise MapDocumentError([f"{ref!r} is not a cognitive map; combine needs cognitive maps"])
    weights = None
    if args.weights:
        weights = [_parse_scalar_arg(tok) for tok in args.weights.split(",")]
    try:
        combined = combine(maps, weights, normalize=args.normalize)
    except ValueError as exc:
        raise MapDocumentError([str(exc)]) from exc
    metadata = {"combined_from": list(args.maps), "normalized": bool(args.normalize)}
    if args.weights:
        metadata["weights"] = args.weights.split(",")
    if args.out:
        write_map_file(args.out, combined, metadata)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(report_json(save_map(combined, metadata)))
    return EXIT_OK


def cmd_export_dot(args) -> int:
    mapping = resolve_map_argument(args.map, args.kind)
    text = export_dot(mapping)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from cogmap.service import create_app

    app = create_app(
        data_dir=args.data_dir,
        persist_dir=args.persist_dir,
        static_dir=args.static_dir,
    )
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def cmd_list(args) -> int:
    for map_id in bundled_map_ids():
        print(map_id)
    return EXIT_OK


_COMMANDS = {
    "validate": cmd_validate,
    "infer": cmd_infer,
    "sweep": cmd_sweep,
    "combine": cmd_combine,
    "export-dot": cmd_export_dot,
    "serve": cmd_serve,
    "list": cmd_list,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except MapDocumentError as exc:
        for finding in exc.findings:
            print(finding, file=sys.stderr)
        return EXIT_INPUT
    except (UnknownLabelError, DimensionMismatch) as exc:
        print(exc, file=sys.stderr)
        return EXIT_LABEL
    except OSError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
