"""Optional figure rendering for CLI reports.

Loaded only when --figures is given; writes PNG files next to nothing else
(the delimited report stays on stdout). Each renderer skips quietly when its
series is missing or marked empty, so marker reports never crash plotting.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .report import Report

__all__ = ["render"]

_STYLE = {
    "figure.figsize": (6.4, 4.2),
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def render(report: Report, out_dir: str) -> list[str]:
    """Render the figures appropriate to the report; returns written paths."""
    os.makedirs(out_dir, exist_ok=True)
    with plt.rc_context(_STYLE):
        if report.command == "stats":
            return _render_stats(report, out_dir)
        if report.command == "estimate":
            return _render_estimate(report, out_dir)
        if report.command == "compare":
            return _render_compare(report, out_dir)
    return []


def _save(figure: plt.Figure, out_dir: str, name: str) -> str:
    path = os.path.join(out_dir, name)
    figure.tight_layout()
    figure.savefig(path, dpi=150)
    plt.close(figure)
    return path


def _render_stats(report: Report, out_dir: str) -> list[str]:
    results = report.results
    paths: list[str] = []
    degree_cc = {int(d): v for d, v in results.get("degree_cc", {}).items()}
    tri_per_degree = {int(d): v for d, v in results.get("tri_per_degree", {}).items()}
    if degree_cc:
        figure, (left, right) = plt.subplots(1, 2, figsize=(9.6, 4.2))
        degrees = sorted(degree_cc)
        left.plot(degrees, [degree_cc[d] for d in degrees], "o-")
        left.set_xscale("log")
        left.set_xlabel("degree")
        left.set_ylabel("clustering coefficient")
        left.set_title("exact degree-wise clustering")
        degrees = sorted(d for d, t in tri_per_degree.items() if t > 0)
        if degrees:
            right.plot(degrees, [tri_per_degree[d] for d in degrees], "o-")
            right.set_yscale("log")
            right.set_xscale("log")
        right.set_xlabel("degree")
        right.set_ylabel("triangles touching the class")
        right.set_title("exact triangles per degree")
        paths.append(_save(figure, out_dir, "stats_degree.png"))
    census = results.get("census")
    if census:
        figure, axes = plt.subplots()
        labels = list(census)
        axes.bar(labels, [census[rho] for rho in labels])
        axes.set_xlabel("triangle type")
        axes.set_ylabel("count")
        axes.set_title("directed triangle census")
        paths.append(_save(figure, out_dir, "stats_census.png"))
    return paths


def _render_estimate(report: Report, out_dir: str) -> list[str]:
    results = report.results
    metric = results.get("metric", "estimate")
    kind = results.get("kind")
    if results.get("status") != "ok":
        return []
    if kind == "scalar":
        figure, axes = plt.subplots(figsize=(4.2, 4.2))
        axes.bar([metric], [results["value"]],
                 yerr=[results["halfwidth"]], capsize=6)
        axes.set_ylabel("estimate")
        axes.set_title(f"{metric} with Hoeffding half-width")
        return [_save(figure, out_dir, f"estimate_{metric}.png")]
    if kind == "bins":
        rows = [row for row in results.get("rows", []) if row.get("status") == "ok"]
        if not rows:
            return []
        figure, axes = plt.subplots()
        positions = [row["bin_hi"] for row in rows]
        axes.errorbar(positions, [row["scaled_value"] for row in rows],
                      yerr=[row["scaled_halfwidth"] for row in rows],
                      fmt="o-", capsize=4)
        axes.set_xscale("log")
        axes.set_xlabel("bin upper degree")
        axes.set_ylabel(metric)
        axes.set_title(f"{metric} by degree bin")
        return [_save(figure, out_dir, f"estimate_{metric}.png")]
    if kind == "directed":
        rows = results.get("rows", [])
        if not rows:
            return []
        figure, axes = plt.subplots()
        labels = [row["triangle_type"] for row in rows]
        values = [row["scaled_value"] for row in rows]
        errors = [row.get("scaled_halfwidth") or 0.0 for row in rows]
        axes.bar(labels, values, yerr=errors, capsize=4)
        axes.set_xlabel("triangle type")
        axes.set_ylabel("estimated count")
        axes.set_title("directed triangle estimates")
        return [_save(figure, out_dir, "estimate_directed.png")]
    return []


def _render_compare(report: Report, out_dir: str) -> list[str]:
    ladder = report.results.get("ladder", [])
    if not ladder:
        return []
    figure, (left, right) = plt.subplots(1, 2, figsize=(9.6, 4.2))
    samples = [point["k"] for point in ladder]
    left.plot(samples, [point["bound"] for point in ladder], "k--", label="bound")
    for metric, marker in (("transitivity", "o"), ("local_cc", "s")):
        errors = [point[metric]["mean_abs_error"] for point in ladder]
        left.plot(samples, errors, marker + "-", label=metric)
        right.plot(samples, [point[metric]["speedup"] for point in ladder],
                   marker + "-", label=metric)
    left.set_xscale("log")
    left.set_yscale("log")
    left.set_xlabel("samples")
    left.set_ylabel("mean absolute error")
    left.legend()
    right.set_xscale("log")
    right.set_yscale("log")
    right.set_xlabel("samples")
    right.set_ylabel("speedup over enumeration")
    right.legend()
    return [_save(figure, out_dir, "compare.png")]
