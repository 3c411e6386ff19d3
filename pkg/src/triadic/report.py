"""Report assembly and serialization.

Every command produces one Report; ``to_json`` renders the full nested
document, ``to_csv`` renders the command's primary table with a fixed,
documented column order. Sampled values always carry (halfwidth, delta, k);
exact values are marked exact. Markers ("empty-graph", "no-wedges",
"exact-zero") replace values that do not exist rather than faking zeros.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any

__all__ = ["Report"]

_STATS_COLUMNS = ["n", "m", "wedges", "triangles", "transitivity", "local_cc",
                  "load_seconds", "analysis_seconds"]
_STATS_DIRECTED_COLUMNS = (["directed_edges", "reciprocal_pairs", "reciprocity"]
                           + [f"wedges_{psi}" for psi in
                              ("i", "ii", "iii", "iv", "v", "vi")]
                           + [f"tri_{rho}" for rho in "abcdefg"])
_SCALAR_COLUMNS = ["metric", "status", "value", "halfwidth", "scale",
                   "scaled_value", "scaled_halfwidth", "k", "closed", "delta", "seed"]
_BIN_COLUMNS = ["metric", "status", "bin_lo", "bin_hi", "n_vertices", "wedges",
                "k", "closed", "value", "halfwidth", "scale", "scaled_value",
                "scaled_halfwidth", "delta", "seed"]
_DIRECTED_COLUMNS = ["metric", "status", "triangle_type", "wedge_type", "chi",
                     "wedge_total", "k", "closed", "value", "halfwidth", "scale",
                     "scaled_value", "scaled_halfwidth", "delta", "seed"]
_COMPARE_COLUMNS = ["metric", "k", "bound", "trials", "mean_abs_error",
                    "max_abs_error", "mean_sampling_seconds",
                    "enumeration_seconds", "speedup"]


@dataclass
class Report:
    """One command's structured output."""

    command: str
    graph: dict[str, Any]
    config: dict[str, Any]
    results: dict[str, Any]
    timing: dict[str, Any]
    warnings: list[str] = field(default_factory=list)
    figures: list[str] = field(default_factory=list)

    def to_document(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "graph": self.graph,
            "config": self.config,
            "results": self.results,
            "timing": self.timing,
            "warnings": self.warnings,
            "figures": self.figures,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document(), indent=2, allow_nan=False) + "\n"

    def to_csv(self) -> str:
        kind = self.results.get("kind")
        if kind == "stats":
            return self._stats_csv()
        if kind == "scalar":
            return self._scalar_csv()
        if kind == "bins":
            return self._bins_csv()
        if kind == "directed":
            return self._directed_csv()
        if kind == "compare":
            return self._compare_csv()
        raise ValueError(f"no CSV rendering for result kind {kind!r}")

    def _stats_csv(self) -> str:
        columns = list(_STATS_COLUMNS)
        row = {
            "n": self.graph.get("n"),
            "m": self.graph.get("m"),
            "wedges": self.graph.get("wedges"),
            "triangles": self.results.get("triangles"),
            "transitivity": self.results.get("transitivity"),
            "local_cc": self.results.get("local_cc"),
            "load_seconds": self.timing.get("load_seconds"),
            "analysis_seconds": self.timing.get("analysis_seconds"),
        }
        if "census" in self.results:
            columns += _STATS_DIRECTED_COLUMNS
            row["directed_edges"] = self.graph.get("directed_edges")
            row["reciprocal_pairs"] = self.graph.get("reciprocal_pairs")
            row["reciprocity"] = self.graph.get("reciprocity")
            for psi, value in self.graph.get("wedge_totals", {}).items():
                row[f"wedges_{psi}"] = value
            for rho, value in self.results["census"].items():
                row[f"tri_{rho}"] = value
        return _render_csv(columns, [row])

    def _scalar_csv(self) -> str:
        row = {"metric": self.results.get("metric"),
               "status": self.results.get("status"),
               "delta": self.config.get("delta"),
               "seed": self.config.get("seed")}
        for key in ("value", "halfwidth", "scale", "scaled_value",
                    "scaled_halfwidth", "k", "closed"):
            row[key] = self.results.get(key)
        return _render_csv(_SCALAR_COLUMNS, [row])

    def _rows_csv(self, columns: list[str], row_key: str) -> str:
        metric = self.results.get("metric")
        delta = self.config.get("delta")
        seed = self.config.get("seed")
        rows = []
        for entry in self.results.get(row_key, []):
            row = dict(entry)
            row["metric"] = metric
            row.setdefault("delta", delta)
            row["seed"] = seed
            rows.append(row)
        if not rows:
            rows = [{"metric": metric, "status": self.results.get("status")}]
        return _render_csv(columns, rows)

    def _bins_csv(self) -> str:
        return self._rows_csv(_BIN_COLUMNS, "rows")

    def _directed_csv(self) -> str:
        return self._rows_csv(_DIRECTED_COLUMNS, "rows")

    def _compare_csv(self) -> str:
        rows = []
        enumeration = self.results.get("enumeration_seconds")
        for point in self.results.get("ladder", []):
            for metric in ("transitivity", "local_cc"):
                entry = point.get(metric)
                if entry is None:
                    continue
                rows.append({
                    "metric": metric,
                    "k": point.get("k"),
                    "bound": point.get("bound"),
                    "trials": self.results.get("trials"),
                    "mean_abs_error": entry.get("mean_abs_error"),
                    "max_abs_error": entry.get("max_abs_error"),
                    "mean_sampling_seconds": entry.get("mean_sampling_seconds"),
                    "enumeration_seconds": enumeration,
                    "speedup": entry.get("speedup"),
                })
        if not rows:
            rows = [{"metric": self.results.get("status")}]
        return _render_csv(_COMPARE_COLUMNS, rows)


def _render_csv(columns: list[str], rows: list[dict[str, Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(["" if row.get(col) is None else row.get(col)
                         for col in columns])
    return buffer.getvalue()
