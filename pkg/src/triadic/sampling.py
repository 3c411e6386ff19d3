"""Wedge sampling: Hoeffding bounds, the uniform wedge sampler, and the
undirected estimators (transitivity, local cc, degree cc, triangles per
degree).

Reproducibility contract: an estimate is computed in fixed-size batches;
batch j of logical stream s draws from a counter-based generator keyed by
(seed, s, j) and issues a fixed sequence of vectorized draw calls. Batch
boundaries depend only on the sample count, and per-batch results are
integers reduced by summation, so results are identical for any worker
count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DegenerateDegreeError, EmptyGraphError, NoSuchDegreeError, NoWedgesError
from .graphs import DegreeBinning, UndirectedGraph

__all__ = [
    "BATCH_SIZE",
    "samples_needed",
    "error_halfwidth",
    "SamplerConfig",
    "Estimate",
    "BinEstimate",
    "WedgeDistribution",
    "sample_uniform_wedge",
    "sample_uniform_wedges",
    "estimate_transitivity",
    "estimate_local_cc",
    "estimate_degree_cc",
    "estimate_binned_cc",
    "estimate_tri_per_degree",
    "estimate_binned_tri",
]

BATCH_SIZE = 1 << 14
_MASK64 = (1 << 64) - 1
_STREAM_SHIFT = 40  # batch index occupies the low bits of the Philox key word


def samples_needed(epsilon: float, delta: float) -> int:
    """Samples guaranteeing additive error < epsilon with confidence 1-delta.

    k = ceil(0.5 * epsilon^-2 * ln(2/delta)).
    """
    if not 0.0 < epsilon < 1.0 or not 0.0 < delta < 1.0:
        raise ValueError("epsilon and delta must lie in (0, 1)")
    return math.ceil(0.5 * epsilon ** -2 * math.log(2.0 / delta))


def error_halfwidth(k: int, delta: float) -> float:
    """Additive error guaranteed with confidence 1-delta after k samples."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    return math.sqrt(math.log(2.0 / delta) / (2.0 * k))


@dataclass(frozen=True)
class SamplerConfig:
    """Sampling budget: either k directly, or (epsilon, delta) to derive it."""

    k: int | None = None
    epsilon: float | None = None
    delta: float = 0.001
    seed: int = 0
    workers: int = 1

    def __post_init__(self) -> None:
        if (self.k is None) == (self.epsilon is None):
            raise ValueError("give exactly one of k or epsilon")
        if self.k is not None and self.k < 1:
            raise ValueError("k must be at least 1")
        if self.epsilon is not None and not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must lie in (0, 1)")
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    @property
    def samples(self) -> int:
        if self.k is not None:
            return self.k
        return samples_needed(self.epsilon, self.delta)

    @property
    def halfwidth(self) -> float:
        return error_halfwidth(self.samples, self.delta)


@dataclass(frozen=True)
class Estimate:
    """Estimator output.

    ``value`` is the mean of per-sample scores, always in [0, 1], and obeys
    |value - truth| < halfwidth with confidence 1 - delta. ``scale`` maps the
    ratio to the count scale where one exists (W/3 for transitivity's
    triangle estimate, W_d for triangles per degree, 1 otherwise), giving
    |scaled_value - scaled truth| < scaled_halfwidth at the same confidence.
    """

    value: float
    halfwidth: float
    scale: float
    k: int
    closed: int
    delta: float

    @property
    def scaled_value(self) -> float:
        return self.value * self.scale

    @property
    def scaled_halfwidth(self) -> float:
        return self.halfwidth * self.scale


@dataclass(frozen=True)
class BinEstimate:
    """Per-bin estimator row; ``estimate`` is None when the bin has no wedges."""

    lo: int
    hi: int
    n_vertices: int
    wedges: int
    estimate: Estimate | None

    @property
    def empty(self) -> bool:
        return self.estimate is None


class WedgeDistribution:
    """Integer wedge weights over candidate vertices with prefix sums.

    A vertex is drawn with probability weight/total by binary search of a
    uniform integer draw against the cumulative weights; zero-weight
    vertices own an empty interval and are never selected.
    """

    def __init__(self, vertices: np.ndarray, weights: np.ndarray) -> None:
        self.vertices = np.ascontiguousarray(vertices, dtype=np.int64)
        self.weights = np.ascontiguousarray(weights, dtype=np.int64)
        if self.vertices.shape != self.weights.shape:
            raise ValueError("vertices and weights must align")
        if self.weights.size and int(self.weights.min()) < 0:
            raise ValueError("weights must be nonnegative")
        self.cumulative = np.cumsum(self.weights)
        self.total = int(self.cumulative[-1]) if self.cumulative.size else 0
        for arr in (self.vertices, self.weights, self.cumulative):
            arr.flags.writeable = False

    @classmethod
    def uniform_wedges(cls, graph: UndirectedGraph) -> "WedgeDistribution":
        """The uniform-wedge distribution: w(v) = (d_v choose 2)."""
        return cls(np.arange(graph.n, dtype=np.int64), graph.wedge_counts)

    @classmethod
    def for_bin(cls, graph: UndirectedGraph, lo: int, hi: int) -> "WedgeDistribution":
        """Restriction to centers with lo < degree <= hi."""
        members = np.flatnonzero((graph.degrees > lo) & (graph.degrees <= hi))
        return cls(members, graph.wedge_counts[members])

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.total == 0:
            raise NoWedgesError("distribution has no wedges")
        draws = rng.integers(0, self.total, size=size)
        return self.vertices[np.searchsorted(self.cumulative, draws, side="right")]

    def probability(self, v: int) -> float:
        """Selection probability of vertex v (0 if absent or weightless)."""
        if self.total == 0:
            return 0.0
        pos = int(np.searchsorted(self.vertices, v))
        if pos >= self.vertices.size or int(self.vertices[pos]) != v:
            return 0.0
        return int(self.weights[pos]) / self.total


def _generator(seed: int, stream: int, index: int) -> np.random.Generator:
    key = np.array([seed & _MASK64, ((stream << _STREAM_SHIFT) + index) & _MASK64],
                   dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _batch_plan(k: int) -> list[tuple[int, int]]:
    plan = []
    index = 0
    remaining = k
    while remaining > 0:
        count = min(BATCH_SIZE, remaining)
        plan.append((index, count))
        index += 1
        remaining -= count
    return plan


def _run_batches(cfg: SamplerConfig,
                 batch_fn: Callable[[np.random.Generator, int], tuple[int, ...]],
                 stream: int = 0) -> tuple[int, ...]:
    """Run batch_fn over the batch plan and sum its integer tuples."""
    plan = _batch_plan(cfg.samples)

    def run(item: tuple[int, int]) -> tuple[int, ...]:
        index, count = item
        return batch_fn(_generator(cfg.seed, stream, index), count)

    if cfg.workers > 1 and len(plan) > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(run, plan))
    else:
        parts = [run(item) for item in plan]
    return tuple(int(sum(column)) for column in zip(*parts))


def _draw_wedges(graph: UndirectedGraph, dist: WedgeDistribution,
                 rng: np.random.Generator, count: int
                 ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized uniform wedges: (centers, endpoints u, endpoints w)."""
    centers = dist.sample(rng, count)
    d = graph.degrees[centers]
    first = rng.integers(0, d)
    second = rng.integers(0, d - 1)
    second = second + (second >= first)
    base = graph.indptr[centers]
    return centers, graph.indices[base + first], graph.indices[base + second]


def sample_uniform_wedges(graph: UndirectedGraph, dist: WedgeDistribution,
                          rng: np.random.Generator, count: int
                          ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Draw ``count`` uniform random wedges (with replacement).

    The center lands on v with probability W_v/W; the endpoints are two
    distinct uniform neighbors of the center, so every wedge has net
    probability 1/W.
    """
    if dist.total == 0:
        raise NoWedgesError("graph has no wedges")
    return _draw_wedges(graph, dist, rng, count)


def sample_uniform_wedge(graph: UndirectedGraph, dist: WedgeDistribution,
                         rng: np.random.Generator) -> tuple[int, int, int]:
    """Single uniform wedge as (center, u, w); delegates to the bulk path."""
    centers, u, w = sample_uniform_wedges(graph, dist, rng, 1)
    return int(centers[0]), int(u[0]), int(w[0])


def estimate_transitivity(graph: UndirectedGraph, cfg: SamplerConfig) -> Estimate:
    """Closed fraction of k uniform wedges; scale W/3 yields the triangle
    count estimate as scaled_value."""
    dist = WedgeDistribution.uniform_wedges(graph)
    if dist.total == 0:
        raise NoWedgesError("graph has no wedges")

    def batch(rng: np.random.Generator, count: int) -> tuple[int, ...]:
        _, u, w = _draw_wedges(graph, dist, rng, count)
        return (int(np.count_nonzero(graph.has_edges(u, w))),)

    k = cfg.samples
    (closed,) = _run_batches(cfg, batch)
    return Estimate(closed / k, error_halfwidth(k, cfg.delta), dist.total / 3.0,
                    k, closed, cfg.delta)


def estimate_local_cc(graph: UndirectedGraph, cfg: SamplerConfig) -> Estimate:
    """Mean closure over centers drawn uniformly from ALL n vertices.

    A center with fewer than two neighbors counts as an open sample, matching
    the C_v = 0 convention for degree-<2 vertices.
    """
    if graph.n == 0:
        raise EmptyGraphError("graph has no vertices")
    degrees = graph.degrees

    def batch(rng: np.random.Generator, count: int) -> tuple[int, ...]:
        centers = rng.integers(0, graph.n, size=count)
        d = degrees[centers]
        eligible = centers[d >= 2]
        if eligible.size == 0:
            return (0,)
        d = degrees[eligible]
        first = rng.integers(0, d)
        second = rng.integers(0, d - 1)
        second = second + (second >= first)
        base = graph.indptr[eligible]
        u = graph.indices[base + first]
        w = graph.indices[base + second]
        return (int(np.count_nonzero(graph.has_edges(u, w))),)

    k = cfg.samples
    (closed,) = _run_batches(cfg, batch)
    return Estimate(closed / k, error_halfwidth(k, cfg.delta), 1.0, k, closed, cfg.delta)


def _degree_population(graph: UndirectedGraph, d: int) -> np.ndarray:
    if d < 2:
        raise DegenerateDegreeError(f"degree {d} centers no wedges")
    members = graph.degree_index.vertices(d)
    if members.size == 0:
        raise NoSuchDegreeError(f"no vertex has degree {d}")
    return members


def estimate_degree_cc(graph: UndirectedGraph, d: int, cfg: SamplerConfig) -> Estimate:
    """Closure fraction over wedges centered at uniform degree-d vertices."""
    members = _degree_population(graph, d)

    def batch(rng: np.random.Generator, count: int) -> tuple[int, ...]:
        centers = members[rng.integers(0, members.size, size=count)]
        first = rng.integers(0, d, size=count)
        second = rng.integers(0, d - 1, size=count)
        second = second + (second >= first)
        base = graph.indptr[centers]
        u = graph.indices[base + first]
        w = graph.indices[base + second]
        return (int(np.count_nonzero(graph.has_edges(u, w))),)

    k = cfg.samples
    (closed,) = _run_batches(cfg, batch)
    return Estimate(closed / k, error_halfwidth(k, cfg.delta), 1.0, k, closed, cfg.delta)


def estimate_binned_cc(graph: UndirectedGraph, binning: DegreeBinning,
                       cfg: SamplerConfig) -> list[BinEstimate]:
    """Per-bin closure fractions with wedge-weighted centers.

    Within a bin, a center is drawn with probability W_v / (bin wedge total),
    making every wedge of the bin equally likely; the estimated quantity is
    the bin's wedge-weighted closure ratio (sum of T_v over sum of W_v), not
    the unweighted mean of C_v. Bins without wedges yield an empty row.
    """
    k = cfg.samples
    eps = error_halfwidth(k, cfg.delta)
    rows: list[BinEstimate] = []
    for stream, (lo, hi) in enumerate(binning):
        dist = WedgeDistribution.for_bin(graph, lo, hi)
        if dist.total == 0:
            rows.append(BinEstimate(lo, hi, dist.vertices.size, 0, None))
            continue

        def batch(rng: np.random.Generator, count: int,
                  dist: WedgeDistribution = dist) -> tuple[int, ...]:
            _, u, w = _draw_wedges(graph, dist, rng, count)
            return (int(np.count_nonzero(graph.has_edges(u, w))),)

        (closed,) = _run_batches(cfg, batch, stream=stream)
        rows.append(BinEstimate(lo, hi, dist.vertices.size, dist.total,
                                Estimate(closed / k, eps, 1.0, k, closed, cfg.delta)))
    return rows


def estimate_tri_per_degree(graph: UndirectedGraph, d: int, cfg: SamplerConfig) -> Estimate:
    """Estimate T_d, the triangles touching at least one degree-d vertex.

    Wedges are uniform over the W_d = n_d * (d choose 2) wedges centered in
    V_d; a closed wedge scores 1/(number of its vertices with degree exactly
    d), so W_d * mean(Y) is unbiased for T_d. scaled_value carries the count.
    """
    members = _degree_population(graph, d)
    degrees = graph.degrees

    def batch(rng: np.random.Generator, count: int) -> tuple[int, ...]:
        centers = members[rng.integers(0, members.size, size=count)]
        first = rng.integers(0, d, size=count)
        second = rng.integers(0, d - 1, size=count)
        second = second + (second >= first)
        base = graph.indptr[centers]
        u = graph.indices[base + first]
        w = graph.indices[base + second]
        closed = graph.has_edges(u, w)
        # the center always has degree d; count degree-d wedge members 1..3
        hits = 1 + (degrees[u[closed]] == d) + (degrees[w[closed]] == d)
        return (int(np.count_nonzero(hits == 1)),
                int(np.count_nonzero(hits == 2)),
                int(np.count_nonzero(hits == 3)))

    k = cfg.samples
    ones, twos, threes = _run_batches(cfg, batch)
    closed = ones + twos + threes
    mean_score = (ones + twos / 2.0 + threes / 3.0) / k
    w_d = members.size * (d * (d - 1) // 2)
    return Estimate(mean_score, error_halfwidth(k, cfg.delta), float(w_d),
                    k, closed, cfg.delta)


def estimate_binned_tri(graph: UndirectedGraph, binning: DegreeBinning,
                        cfg: SamplerConfig) -> list[BinEstimate]:
    """Per-bin triangle counts: T_bin = triangles with >= 1 vertex in the bin.

    Generalizes the per-degree estimator: centers are wedge-weighted within
    the bin and a closed wedge scores 1/(number of its vertices whose degree
    falls in the bin); W_bin * mean(Y) is unbiased for T_bin by the same
    partition argument (a triangle with j bin vertices owns j bin-centered
    closed wedges, each scoring 1/j).
    """
    k = cfg.samples
    eps = error_halfwidth(k, cfg.delta)
    degrees = graph.degrees
    rows: list[BinEstimate] = []
    for stream, (lo, hi) in enumerate(binning):
        dist = WedgeDistribution.for_bin(graph, lo, hi)
        if dist.total == 0:
            rows.append(BinEstimate(lo, hi, dist.vertices.size, 0, None))
            continue

        def batch(rng: np.random.Generator, count: int,
                  dist: WedgeDistribution = dist, lo: int = lo, hi: int = hi
                  ) -> tuple[int, ...]:
            _, u, w = _draw_wedges(graph, dist, rng, count)
            closed = graph.has_edges(u, w)
            du = degrees[u[closed]]
            dw = degrees[w[closed]]
            hits = (1 + ((du > lo) & (du <= hi)) + ((dw > lo) & (dw <= hi)))
            return (int(np.count_nonzero(hits == 1)),
                    int(np.count_nonzero(hits == 2)),
                    int(np.count_nonzero(hits == 3)))

        ones, twos, threes = _run_batches(cfg, batch, stream=stream)
        closed = ones + twos + threes
        mean_score = (ones + twos / 2.0 + threes / 3.0) / k
        rows.append(BinEstimate(lo, hi, dist.vertices.size, dist.total,
                                Estimate(mean_score, eps, float(dist.total), k,
                                         closed, cfg.delta)))
    return rows
