"""Command-line surface.

Subcommands: construct, verify, analyze, heuristic, expand, gen.  Exit
codes: 0 success/verified, 2 precondition violation, 3 heuristic failure,
4 verification failed.  Every command prints a RunReport block; verify,
analyze, and construct optionally render figures next to it.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from .construct import parallel_d_stable
from .corpus import GENERATOR_NAMES, generate
from .errors import (
    EdgeCountMismatch,
    InternalStabilityCheckFailed,
    NonEdgeStep,
    StableTraceError,
    WrongLength,
)
from .graph import Graph, parse_graph
from .heuristics import (
    DEFAULT_SEARCH_BUDGET,
    Failure,
    block_concatenation,
    euler_concatenation,
)
from .report import (
    RunReport,
    analyze_tables,
    render_figures,
    sha256_of,
    stability_fields,
)
from .trace import (
    classify_edges,
    is_parallel_d_stable,
    parse_trace_tokens,
    validate_double_trace,
)
from .transform import expand_to_4_regular

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_HEURISTIC = 3
EXIT_VERIFICATION = 4

_VERIFICATION_ERRORS = (
    WrongLength,
    NonEdgeStep,
    EdgeCountMismatch,
    InternalStabilityCheckFailed,
)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_graph(path: str, report: RunReport) -> Graph:
    text = _read(path)
    report.digests["graph_sha256"] = sha256_of(text)
    return parse_graph(text)


def _figure_stem(args) -> str:
    for attr in ("trace", "out", "graph", "infile"):
        value = getattr(args, attr, None)
        if value:
            return Path(value).stem
    return "run"


def _maybe_render(args, report: RunReport, g, classification=None, stability=None):
    if getattr(args, "figures", None):
        paths = render_figures(
            g,
            Path(args.figures),
            _figure_stem(args),
            classification=classification,
            stability=stability,
        )
        report.fields["figures"] = " ".join(str(p) for p in paths)


def cmd_construct(args, report: RunReport) -> int:
    g = _load_graph(args.infile, report)
    w = parallel_d_stable(g, args.d)
    stability = is_parallel_d_stable(w, args.d)
    text = w.to_text()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        report.fields["trace_path"] = args.out
    else:
        sys.stdout.write(text)
    report.digests["trace_sha256"] = sha256_of(text)
    report.outcome = "constructed"
    report.fields.update(stability_fields(stability))
    report.component_sizes = stability.component_sizes
    _maybe_render(args, report, g, classify_edges(w), stability)
    return EXIT_OK


def cmd_verify(args, report: RunReport) -> int:
    g = _load_graph(args.graph, report)
    trace_text = _read(args.trace)
    report.digests["trace_sha256"] = sha256_of(trace_text)
    w = validate_double_trace(g, parse_trace_tokens(trace_text))
    stability = is_parallel_d_stable(w, args.d)
    report.fields.update(stability_fields(stability))
    report.component_sizes = stability.component_sizes
    _maybe_render(args, report, g, classify_edges(w), stability)
    if stability.stable:
        report.outcome = (
            f"verified parallel=true stable_order>={stability.requested_order}"
        )
        return EXIT_OK
    report.outcome = "verification_failed"
    return EXIT_VERIFICATION


def cmd_analyze(args, report: RunReport) -> int:
    g = _load_graph(args.graph, report)
    trace_text = _read(args.trace)
    report.digests["trace_sha256"] = sha256_of(trace_text)
    w = validate_double_trace(g, parse_trace_tokens(trace_text))
    classification = classify_edges(w)
    stability = is_parallel_d_stable(w, 1)
    sys.stdout.write(analyze_tables(w, classification))
    sys.stdout.write("\n")
    report.outcome = "analyzed"
    report.fields["classification"] = classification.kind
    report.fields["max_stable_order"] = (
        "strong" if stability.strong else str(stability.max_stable_order)
    )
    report.component_sizes = stability.component_sizes
    _maybe_render(args, report, g, classification, stability)
    return EXIT_OK


def cmd_heuristic(args, report: RunReport) -> int:
    g = _load_graph(args.infile, report)
    budget = args.budget
    if budget is None:
        budget = int(os.environ.get("STABLE_TRACE_BUDGET", DEFAULT_SEARCH_BUDGET))
    if args.method == "euler-concat":
        outcome = euler_concatenation(g, budget=budget)
    else:
        outcome = block_concatenation(g, relaxed=args.relaxed)
    if isinstance(outcome, Failure):
        report.outcome = "heuristic_failed"
        report.fields["failure_code"] = outcome.reason
        report.fields["failure_detail"] = outcome.detail
        if outcome.nodes_explored:
            report.fields["nodes_explored"] = str(outcome.nodes_explored)
        return EXIT_HEURISTIC
    stability = is_parallel_d_stable(outcome, 2)
    text = outcome.to_text()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        report.fields["trace_path"] = args.out
    else:
        sys.stdout.write(text)
    report.digests["trace_sha256"] = sha256_of(text)
    report.outcome = "constructed"
    report.fields.update(stability_fields(stability))
    return EXIT_OK


def cmd_expand(args, report: RunReport) -> int:
    g = _load_graph(args.infile, report)
    expanded, emap = expand_to_4_regular(g)
    graph_text = expanded.to_text()
    map_text = emap.to_text()
    Path(args.out_graph).write_text(graph_text, encoding="utf-8")
    Path(args.out_map).write_text(map_text, encoding="utf-8")
    report.digests["expanded_sha256"] = sha256_of(graph_text)
    report.outcome = "expanded"
    report.fields["vertices"] = str(len(expanded.vertices))
    report.fields["edges"] = str(expanded.edge_count)
    report.fields["expanded_vertices"] = str(len(emap.paths))
    report.fields["graph_path"] = args.out_graph
    report.fields["map_path"] = args.out_map
    return EXIT_OK


def cmd_gen(args, report: RunReport) -> int:
    g = generate(args.name, tuple(args.params), seed=args.seed)
    text = g.to_text()
    report.digests["graph_sha256"] = sha256_of(text)
    report.outcome = "generated"
    report.fields["vertices"] = str(len(g.vertices))
    report.fields["edges"] = str(g.edge_count)
    report.fields["seed"] = str(args.seed)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        report.fields["graph_path"] = args.out
        return EXIT_OK
    sys.stdout.write(text)
    # stdout carries the graph itself; suppress the report block
    report.outcome = ""
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabletrace",
        description="Construct, transform, and verify parallel d-stable "
        "double traces of simple connected graphs.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("construct", help="build a parallel d-stable trace")
    p.add_argument("--d", type=int, required=True, help="stability order")
    p.add_argument("--in", dest="infile", required=True, help="graph edge list")
    p.add_argument("--out", help="trace output path (default stdout)")
    p.add_argument("--figures", help="directory for rendered figures")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="verify a trace against a graph")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--trace", required=True)
    p.add_argument("--figures", help="directory for rendered figures")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "analyze", help="per-vertex transition components and edge classes"
    )
    p.add_argument("--graph", required=True)
    p.add_argument("--trace", required=True)
    p.add_argument("--figures", help="directory for rendered figures")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("heuristic", help="run a fallible construction")
    p.add_argument("method", choices=("euler-concat", "blocks"))
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--relaxed", action="store_true")
    p.add_argument(
        "--budget",
        type=int,
        default=None,
        help="search node budget (default STABLE_TRACE_BUDGET or 10^7)",
    )
    p.add_argument("--out", help="trace output path on success")
    p.set_defaults(func=cmd_heuristic)

    p = sub.add_parser("expand", help="expand high-degree vertices to 4-regular")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out-graph", required=True)
    p.add_argument("--out-map", required=True)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("gen", help="emit a named or random graph")
    p.add_argument("--name", required=True, choices=GENERATOR_NAMES)
    p.add_argument("--params", type=int, nargs="*", default=[])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output path (default stdout, no report)")
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    argv_echo = argv if argv is not None else sys.argv[1:]
    report = RunReport(command=" ".join([args.subcommand, *argv_echo[1:]]))
    started = time.perf_counter()
    try:
        code = args.func(args, report)
    except _VERIFICATION_ERRORS as exc:
        report.outcome = "verification_failed"
        report.fields["error"] = f"{type(exc).__name__}: {exc}"
        code = EXIT_VERIFICATION
        print(exc, file=sys.stderr)
    except StableTraceError as exc:
        report.outcome = "precondition_violation"
        report.fields["error"] = f"{type(exc).__name__}: {exc}"
        code = EXIT_PRECONDITION
        print(exc, file=sys.stderr)
    except OSError as exc:
        print(exc, file=sys.stderr)
        return EXIT_PRECONDITION
    report.elapsed_ms = int((time.perf_counter() - started) * 1000)
    if report.outcome:
        sys.stdout.write(report.to_text())
    return code


if __name__ == "__main__":
    sys.exit(main())
