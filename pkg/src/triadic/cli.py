"""Command-line interface.

Three subcommands: ``stats`` (exact analysis), ``estimate`` (wedge-sampled
metrics), and ``compare`` (exact vs sampled error/speedup ladder). Reports
go to stdout as JSON (default) or CSV; diagnostics go to stderr. Exit codes:
0 success (including empty results), 1 usage errors, 2 I/O or parse errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from typing import Any, Sequence

from . import __version__
from .directed import (
    TRIANGLE_TYPES,
    WEDGE_TYPES,
    directed_wedge_totals,
    estimate_directed_triangles,
    exact_directed_census,
)
from .errors import EmptyGraphError, NoWedgesError, ParseError
from .exact import exact_stats
from .graphs import DegreeBinning, load_directed, load_undirected, underlying_undirected
from .report import Report
from .sampling import (
    Estimate,
    SamplerConfig,
    error_halfwidth,
    estimate_binned_cc,
    estimate_binned_tri,
    estimate_degree_cc,
    estimate_local_cc,
    estimate_transitivity,
    estimate_tri_per_degree,
)

WORKERS_ENV = "TRIADIC_WORKERS"
DEFAULT_SAMPLES = 32000
DEFAULT_DELTA = 0.001
DEFAULT_LADDER = "2000,8000,32000"

METRICS = ("transitivity", "local-cc", "degree-cc", "tri-per-degree", "directed")


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage failures exit 1 per the CLI contract."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            print(f"warning: ignoring non-integer {WORKERS_ENV}={raw!r}",
                  file=sys.stderr)
    return 1


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("graph", help="edge-list file (UTF-8, '#' comments)")
    parser.add_argument("--output", choices=("json", "csv"), default="json",
                        help="report format on stdout (default json)")
    parser.add_argument("--figures", metavar="DIR",
                        help="also render PNG figures into DIR")
    parser.add_argument("--workers", type=int, default=None,
                        help=f"sampling worker threads (default ${WORKERS_ENV} or 1)")


def build_parser() -> _Parser:
    parser = _Parser(prog="triadic",
                     description="Exact and wedge-sampled triangle statistics.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    stats = commands.add_parser("stats", help="exact triadic statistics")
    _add_common(stats)
    stats.add_argument("--directed", action="store_true",
                       help="treat input as a digraph and add the triangle census")
    stats.add_argument("--cc-mode",
                       choices=("include-low-degree", "exclude-low-degree"),
                       default="include-low-degree",
                       help="how degree-<2 vertices enter the local cc average")

    estimate = commands.add_parser("estimate", help="wedge-sampled estimates")
    _add_common(estimate)
    estimate.add_argument("--metric", choices=METRICS, required=True)
    budget = estimate.add_mutually_exclusive_group()
    budget.add_argument("--samples", type=int, metavar="K",
                        help=f"sample count (default {DEFAULT_SAMPLES})")
    budget.add_argument("--epsilon", type=float, metavar="E",
                        help="target additive error; sets K via the Hoeffding bound")
    estimate.add_argument("--delta", type=float, default=DEFAULT_DELTA,
                          help=f"failure probability (default {DEFAULT_DELTA})")
    estimate.add_argument("--seed", type=int, default=0,
                          help="reproducibility seed (default 0)")
    estimate.add_argument("--bins", default="log", metavar="SPEC",
                          help="degree metrics: 'log', 'none', or upper bounds 'a,b,c'")
    estimate.add_argument("--wedge-assignment", default="", metavar="SPEC",
                          help="directed metric: overrides like 'b=ii,g=vi'")

    compare = commands.add_parser("compare",
                                  help="exact vs sampled error and speedup")
    _add_common(compare)
    compare.add_argument("--ladder", default=DEFAULT_LADDER, metavar="K1,K2,...",
                         help=f"sample counts to test (default {DEFAULT_LADDER})")
    compare.add_argument("--trials", type=int, default=5,
                         help="sampling repetitions per ladder point (default 5)")
    compare.add_argument("--delta", type=float, default=DEFAULT_DELTA,
                         help=f"failure probability (default {DEFAULT_DELTA})")
    compare.add_argument("--seed", type=int, default=0,
                         help="base reproducibility seed (default 0)")
    return parser


def _parse_bins(spec: str, graph) -> DegreeBinning:
    if spec == "log":
        return DegreeBinning.logarithmic(graph.max_degree)
    if spec == "none":
        return DegreeBinning.singletons(graph.degree_index.observed_degrees)
    try:
        bounds = [int(token) for token in spec.split(",") if token.strip()]
    except ValueError:
        raise ValueError(f"bad bin spec {spec!r}: expected 'log', 'none', "
                         "or comma-separated integer upper bounds") from None
    if not bounds:
        raise ValueError(f"bad bin spec {spec!r}: no upper bounds given")
    return DegreeBinning.from_bounds(bounds)


def _parse_assignment(spec: str) -> dict[str, str] | None:
    if not spec.strip():
        return None
    assignment: dict[str, str] = {}
    for chunk in spec.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        rho, _, psi = chunk.partition("=")
        rho, psi = rho.strip(), psi.strip()
        if rho not in TRIANGLE_TYPES or psi not in WEDGE_TYPES:
            raise ValueError(f"bad wedge assignment entry {chunk!r}: "
                             "expected triangle=wedge like 'b=ii'")
        assignment[rho] = psi
    return assignment


def _parse_ladder(spec: str) -> list[int]:
    try:
        ladder = [int(token) for token in spec.split(",") if token.strip()]
    except ValueError:
        raise ValueError(f"bad ladder {spec!r}: expected comma-separated "
                         "sample counts") from None
    if not ladder or any(k < 1 for k in ladder):
        raise ValueError(f"bad ladder {spec!r}: sample counts must be >= 1")
    return ladder


def _build_config(args: argparse.Namespace) -> SamplerConfig:
    workers = args.workers if args.workers is not None else _default_workers()
    if args.epsilon is not None:
        return SamplerConfig(epsilon=args.epsilon, delta=args.delta,
                             seed=args.seed, workers=workers)
    k = args.samples if args.samples is not None else DEFAULT_SAMPLES
    return SamplerConfig(k=k, delta=args.delta, seed=args.seed, workers=workers)


def _timed_load(path: str, directed: bool):
    started = time.perf_counter()
    graph = load_directed(path) if directed else load_undirected(path)
    return graph, time.perf_counter() - started


def _estimate_payload(estimate: Estimate) -> dict[str, Any]:
    return {
        "status": "ok",
        "value": estimate.value,
        "halfwidth": estimate.halfwidth,
        "scale": estimate.scale,
        "scaled_value": estimate.scaled_value,
        "scaled_halfwidth": estimate.scaled_halfwidth,
        "k": estimate.k,
        "closed": estimate.closed,
    }


def _cmd_stats(args: argparse.Namespace) -> Report:
    include_low = args.cc_mode == "include-low-degree"
    graph, load_seconds = _timed_load(args.graph, args.directed)
    started = time.perf_counter()
    if args.directed:
        shadow = underlying_undirected(graph)
        stats = exact_stats(shadow, include_low_degree=include_low)
        census = exact_directed_census(graph)
        totals = directed_wedge_totals(graph)
    else:
        stats = exact_stats(graph, include_low_degree=include_low)
        census = totals = None
    analysis_seconds = time.perf_counter() - started

    graph_block: dict[str, Any] = {"path": args.graph, "n": stats.n, "m": stats.m,
                                   "wedges": stats.wedges}
    if args.directed:
        graph_block["directed_edges"] = graph.directed_edge_count
        graph_block["reciprocal_pairs"] = graph.reciprocal_pairs
        graph_block["reciprocity"] = graph.reciprocity
        graph_block["wedge_totals"] = totals
    results: dict[str, Any] = {
        "kind": "stats",
        "exact": True,
        "triangles": stats.triangles,
        "transitivity": stats.transitivity,
        "local_cc": stats.local_cc,
        "degree_cc": {str(d): v for d, v in stats.c_by_degree.items()},
        "tri_per_degree": {str(d): v for d, v in stats.t_by_degree.items()},
    }
    if census is not None:
        results["census"] = census.counts
    report = Report(
        command="stats",
        graph=graph_block,
        config={"directed": args.directed, "cc_mode": args.cc_mode},
        results=results,
        timing={"load_seconds": load_seconds, "analysis_seconds": analysis_seconds},
    )
    if stats.n == 0:
        report.warnings.append("graph is empty")
    elif stats.wedges == 0:
        report.warnings.append("graph has no wedges; transitivity is undefined")
    return report


def _bin_row(lo: int, hi: int, n_vertices: int, wedges: int,
             estimate: Estimate | None) -> dict[str, Any]:
    row: dict[str, Any] = {"bin_lo": lo, "bin_hi": hi, "n_vertices": n_vertices,
                           "wedges": wedges}
    if estimate is None:
        row.update(status="empty", k=None, closed=None, value=None, halfwidth=None,
                   scale=None, scaled_value=None, scaled_halfwidth=None)
    else:
        row.update(_estimate_payload(estimate))
    return row


def _degree_metric_rows(graph, metric: str, binning: DegreeBinning,
                        cfg: SamplerConfig) -> list[dict[str, Any]]:
    if metric == "degree-cc":
        binned = estimate_binned_cc(graph, binning, cfg)
        return [_bin_row(r.lo, r.hi, r.n_vertices, r.wedges, r.estimate)
                for r in binned]
    binned = estimate_binned_tri(graph, binning, cfg)
    return [_bin_row(r.lo, r.hi, r.n_vertices, r.wedges, r.estimate)
            for r in binned]


def _degree_singleton_rows(graph, metric: str, binning: DegreeBinning,
                           cfg: SamplerConfig) -> list[dict[str, Any]]:
    rows = []
    estimator = estimate_degree_cc if metric == "degree-cc" else estimate_tri_per_degree
    for lo, hi in binning:
        degree = hi
        members = graph.degree_index.count(degree)
        wedges = members * (degree * (degree - 1) // 2)
        rows.append(_bin_row(lo, hi, members, wedges, estimator(graph, degree, cfg)))
    return rows


def _cmd_estimate(args: argparse.Namespace) -> Report:
    cfg = _build_config(args)
    directed = args.metric == "directed"
    assignment = _parse_assignment(args.wedge_assignment)
    graph, load_seconds = _timed_load(args.graph, directed)

    config_block: dict[str, Any] = {
        "metric": args.metric,
        "k": cfg.samples,
        "epsilon": args.epsilon,
        "halfwidth": error_halfwidth(cfg.samples, cfg.delta),
        "delta": cfg.delta,
        "seed": cfg.seed,
        "workers": cfg.workers,
    }
    results: dict[str, Any]
    warnings: list[str] = []
    started = time.perf_counter()

    if args.metric in ("transitivity", "local-cc"):
        results = {"kind": "scalar", "metric": args.metric}
        try:
            if args.metric == "transitivity":
                estimate = estimate_transitivity(graph, cfg)
            else:
                estimate = estimate_local_cc(graph, cfg)
            results.update(_estimate_payload(estimate))
        except EmptyGraphError:
            results["status"] = "empty-graph"
        except NoWedgesError:
            results["status"] = "empty-graph" if graph.n == 0 else "no-wedges"
    elif args.metric in ("degree-cc", "tri-per-degree"):
        binning = _parse_bins(args.bins, graph)
        config_block["bins"] = args.bins
        results = {"kind": "bins", "metric": args.metric, "status": "ok"}
        if len(binning) == 0:
            results["status"] = "empty-graph" if graph.n == 0 else "no-wedges"
            results["rows"] = []
        elif args.bins == "none":
            results["rows"] = _degree_singleton_rows(graph, args.metric, binning, cfg)
        else:
            results["rows"] = _degree_metric_rows(graph, args.metric, binning, cfg)
        if any(row.get("status") == "empty" for row in results.get("rows", [])):
            warnings.append("some bins contain no wedges and were skipped")
    else:
        estimates = estimate_directed_triangles(graph, cfg, assignment)
        config_block["assignment"] = estimates.assignment
        rows = []
        for rho, entry in estimates.by_type.items():
            row: dict[str, Any] = {"triangle_type": rho, "wedge_type": entry.psi,
                                   "chi": entry.chi, "wedge_total": entry.wedge_total}
            if entry.exact_zero:
                row.update(status="exact-zero", exact=True, value=0.0,
                           halfwidth=None, scale=None, scaled_value=0.0,
                           scaled_halfwidth=None, k=None, closed=None)
            else:
                row.update(_estimate_payload(entry.estimate))
                row["exact"] = False
            rows.append(row)
        results = {"kind": "directed", "metric": "directed", "status": "ok",
                   "wedge_totals": estimates.wedge_totals, "rows": rows}
        if graph.n == 0:
            warnings.append("graph is empty; all counts are exactly zero")
    analysis_seconds = time.perf_counter() - started

    graph_block: dict[str, Any] = {"path": args.graph, "n": graph.n}
    if directed:
        graph_block["directed_edges"] = graph.directed_edge_count
        graph_block["reciprocal_pairs"] = graph.reciprocal_pairs
    else:
        graph_block["m"] = graph.m
        graph_block["wedges"] = graph.total_wedges
    report = Report(
        command="estimate",
        graph=graph_block,
        config=config_block,
        results=results,
        timing={"load_seconds": load_seconds, "analysis_seconds": analysis_seconds},
        warnings=warnings,
    )
    return report


def _cmd_compare(args: argparse.Namespace) -> Report:
    ladder = _parse_ladder(args.ladder)
    workers = args.workers if args.workers is not None else _default_workers()
    graph, load_seconds = _timed_load(args.graph, directed=False)
    stats = exact_stats(graph)
    results: dict[str, Any] = {
        "kind": "compare",
        "status": "ok",
        "trials": args.trials,
        "enumeration_seconds": stats.wall_seconds,
        "exact": {"transitivity": stats.transitivity, "local_cc": stats.local_cc},
        "ladder": [],
    }
    report = Report(
        command="compare",
        graph={"path": args.graph, "n": stats.n, "m": stats.m,
               "wedges": stats.wedges},
        config={"ladder": ladder, "trials": args.trials, "delta": args.delta,
                "seed": args.seed, "workers": workers},
        results=results,
        timing={"load_seconds": load_seconds},
    )
    if stats.wedges == 0:
        results["status"] = "empty-graph" if stats.n == 0 else "no-wedges"
        report.warnings.append("graph has no wedges; nothing to compare")
        return report

    estimators = {"transitivity": (estimate_transitivity, stats.transitivity),
                  "local_cc": (estimate_local_cc, stats.local_cc)}
    for ladder_index, k in enumerate(ladder):
        point: dict[str, Any] = {"k": k, "bound": error_halfwidth(k, args.delta)}
        for metric, (estimator, truth) in estimators.items():
            errors = []
            elapsed = []
            for trial in range(args.trials):
                seed = args.seed + 7919 * ladder_index + trial
                cfg = SamplerConfig(k=k, delta=args.delta, seed=seed,
                                    workers=workers)
                started = time.perf_counter()
                estimate = estimator(graph, cfg)
                elapsed.append(time.perf_counter() - started)
                errors.append(abs(estimate.value - truth))
            mean_seconds = sum(elapsed) / len(elapsed)
            point[metric] = {
                "mean_abs_error": sum(errors) / len(errors),
                "max_abs_error": max(errors),
                "mean_sampling_seconds": mean_seconds,
                "speedup": stats.wall_seconds / max(mean_seconds, 1e-9),
            }
        results["ladder"].append(point)
    return report


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"stats": _cmd_stats, "estimate": _cmd_estimate,
                "compare": _cmd_compare}
    try:
        report = handlers[args.command](args)
    except ParseError as exc:
        print(f"triadic: parse error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"triadic: cannot read input: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"triadic: {exc}", file=sys.stderr)
        return 1

    if args.figures:
        from . import figures

        report.figures.extend(figures.render(report, args.figures))
        for path in report.figures:
            print(f"wrote {path}", file=sys.stderr)
    output = report.to_json() if args.output == "json" else report.to_csv()
    sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
