"""Directed wedge taxonomy, per-type sampling, and the directed triangle
census (exact and estimated).

Wedge types by the edge classes meeting at the center: i = out/out,
ii = in/out, iii = in/in, iv = out/reciprocal, v = in/reciprocal,
vi = reciprocal/reciprocal, where "out"/"in" are one-way edges and a
reciprocal (mutual) pair is a single edge of its own class. Every directed
triangle's multiset of three wedge types identifies exactly one of the seven
triangle types a..g.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoWedgesError
from .exact import triangle_batches
from .graphs import EDGE_IN, EDGE_OUT, EDGE_RECIP, DirectedGraph, underlying_undirected
from .sampling import Estimate, SamplerConfig, WedgeDistribution, _run_batches, error_halfwidth

__all__ = [
    "WEDGE_TYPES",
    "TRIANGLE_TYPES",
    "CANONICAL_WEDGES",
    "CHI",
    "DEFAULT_ASSIGNMENT",
    "DirectedWedge",
    "DirectedCensus",
    "TriangleTypeEstimate",
    "DirectedEstimates",
    "per_vertex_wedge_counts",
    "directed_wedge_totals",
    "directed_wedge_distribution",
    "sample_directed_wedge",
    "sample_directed_wedges",
    "classify_closure",
    "exact_directed_census",
    "estimate_directed_triangles",
    "closure_ratio",
]

WEDGE_TYPES = ("i", "ii", "iii", "iv", "v", "vi")
TRIANGLE_TYPES = ("a", "b", "c", "d", "e", "f", "g")

# Canonical wedge-type multiset of each triangle type.
CANONICAL_WEDGES: dict[str, tuple[str, str, str]] = {
    "a": ("i", "ii", "iii"),
    "b": ("ii", "ii", "ii"),
    "c": ("i", "v", "v"),
    "d": ("ii", "iv", "v"),
    "e": ("iii", "iv", "iv"),
    "f": ("iv", "v", "vi"),
    "g": ("vi", "vi", "vi"),
}

# chi(psi, rho): how many type-psi wedges a type-rho triangle contains.
CHI: dict[tuple[str, str], int] = {
    (psi, rho): CANONICAL_WEDGES[rho].count(psi)
    for psi in WEDGE_TYPES for rho in TRIANGLE_TYPES
}

# Which wedge type counts each triangle type by default.
DEFAULT_ASSIGNMENT: dict[str, str] = {
    "a": "ii", "b": "ii", "c": "v", "d": "iv", "e": "iv", "f": "v", "g": "vi",
}

# Edge-class pair at a wedge center -> wedge-type code (symmetric).
_PAIR_TYPE = np.full((3, 3), -1, dtype=np.int8)
for _classes, _label in (((EDGE_OUT, EDGE_OUT), "i"), ((EDGE_IN, EDGE_OUT), "ii"),
                         ((EDGE_IN, EDGE_IN), "iii"), ((EDGE_OUT, EDGE_RECIP), "iv"),
                         ((EDGE_IN, EDGE_RECIP), "v"), ((EDGE_RECIP, EDGE_RECIP), "vi")):
    _code = WEDGE_TYPES.index(_label)
    _PAIR_TYPE[_classes[0], _classes[1]] = _code
    _PAIR_TYPE[_classes[1], _classes[0]] = _code

# Reversing an ordered pair swaps out/in and fixes reciprocal.
_MIRROR = np.array([EDGE_IN, EDGE_OUT, EDGE_RECIP], dtype=np.int8)

# Sorted wedge-type code triple -> triangle-type code.
_MULTISET_RHO = np.full((6, 6, 6), -1, dtype=np.int8)
for _rho, _multiset in CANONICAL_WEDGES.items():
    _codes = tuple(sorted(WEDGE_TYPES.index(label) for label in _multiset))
    _MULTISET_RHO[_codes] = TRIANGLE_TYPES.index(_rho)

# Edge classes meeting at the center of each wedge type; endpoints u and w of
# a sampled wedge come from the first and second class list respectively.
_CENTER_CLASSES: dict[str, tuple[int, int]] = {
    "i": (EDGE_OUT, EDGE_OUT),
    "ii": (EDGE_IN, EDGE_OUT),
    "iii": (EDGE_IN, EDGE_IN),
    "iv": (EDGE_OUT, EDGE_RECIP),
    "v": (EDGE_IN, EDGE_RECIP),
    "vi": (EDGE_RECIP, EDGE_RECIP),
}


@dataclass(frozen=True)
class DirectedWedge:
    """A psi-wedge: center v with endpoints u and w.

    The sampler emits endpoints in canonical class order (u from the first
    class list of _CENTER_CLASSES[psi]), but classification accepts either
    endpoint order; only the actual edge classes matter.
    """

    center: int
    u: int
    w: int
    psi: str


@dataclass(frozen=True)
class DirectedCensus:
    """Exact per-type triangle counts."""

    counts: dict[str, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class TriangleTypeEstimate:
    """Estimated count for one triangle type.

    When the assigned wedge population is empty the count is exactly zero
    (chi * T_rho <= W_psi forces T_rho = 0) and ``estimate`` is None.
    """

    rho: str
    psi: str
    chi: int
    wedge_total: int
    estimate: Estimate | None
    exact_zero: bool

    @property
    def count(self) -> float:
        return 0.0 if self.exact_zero else self.estimate.scaled_value


@dataclass(frozen=True)
class DirectedEstimates:
    """Per-type estimates plus the run's assignment and wedge totals."""

    by_type: dict[str, TriangleTypeEstimate]
    assignment: dict[str, str]
    k: int
    delta: float
    wedge_totals: dict[str, int]


def _class_storage(graph: DirectedGraph, edge_class: int) -> tuple[np.ndarray, np.ndarray]:
    if edge_class == EDGE_OUT:
        return graph.out_ptr, graph.out_idx
    if edge_class == EDGE_IN:
        return graph.in_ptr, graph.in_idx
    return graph.rec_ptr, graph.rec_idx


def per_vertex_wedge_counts(graph: DirectedGraph, psi: str) -> np.ndarray:
    """W_{v,psi} for every vertex."""
    dout = graph.dout.astype(np.int64)
    din = graph.din.astype(np.int64)
    drec = graph.drec.astype(np.int64)
    if psi == "i":
        return dout * (dout - 1) // 2
    if psi == "ii":
        return din * dout
    if psi == "iii":
        return din * (din - 1) // 2
    if psi == "iv":
        return dout * drec
    if psi == "v":
        return din * drec
    if psi == "vi":
        return drec * (drec - 1) // 2
    raise ValueError(f"unknown wedge type {psi!r}")


def directed_wedge_totals(graph: DirectedGraph) -> dict[str, int]:
    """W_psi for all six wedge types."""
    return {psi: int(per_vertex_wedge_counts(graph, psi).sum()) if graph.n else 0
            for psi in WEDGE_TYPES}


def directed_wedge_distribution(graph: DirectedGraph, psi: str) -> WedgeDistribution:
    """Center distribution proportional to W_{v,psi}."""
    return WedgeDistribution(np.arange(graph.n, dtype=np.int64),
                             per_vertex_wedge_counts(graph, psi))


def _draw_directed_wedges(graph: DirectedGraph, psi: str, dist: WedgeDistribution,
                          rng: np.random.Generator, count: int
                          ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    centers = dist.sample(rng, count)
    class_u, class_w = _CENTER_CLASSES[psi]
    if class_u == class_w:
        ptr, idx = _class_storage(graph, class_u)
        d = ptr[centers + 1] - ptr[centers]
        first = rng.integers(0, d)
        second = rng.integers(0, d - 1)
        second = second + (second >= first)
        base = ptr[centers]
        return centers, idx[base + first], idx[base + second]
    ptr_u, idx_u = _class_storage(graph, class_u)
    ptr_w, idx_w = _class_storage(graph, class_w)
    first = rng.integers(0, ptr_u[centers + 1] - ptr_u[centers])
    second = rng.integers(0, ptr_w[centers + 1] - ptr_w[centers])
    return centers, idx_u[ptr_u[centers] + first], idx_w[ptr_w[centers] + second]


def sample_directed_wedges(graph: DirectedGraph, psi: str, dist: WedgeDistribution,
                           rng: np.random.Generator, count: int
                           ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Draw ``count`` uniform psi-wedges as (centers, u, w) arrays.

    Centers land on v with probability W_{v,psi}/W_psi. Same-class endpoint
    pairs (types i, iii, vi) are drawn without replacement; mixed-class
    endpoints come from disjoint lists and are drawn independently. Every
    psi-wedge has net probability 1/W_psi.
    """
    if psi not in _CENTER_CLASSES:
        raise ValueError(f"unknown wedge type {psi!r}")
    if dist.total == 0:
        raise NoWedgesError(f"graph has no type-{psi} wedges")
    return _draw_directed_wedges(graph, psi, dist, rng, count)


def sample_directed_wedge(graph: DirectedGraph, psi: str, dist: WedgeDistribution,
                          rng: np.random.Generator) -> DirectedWedge:
    """Single uniform psi-wedge; delegates to the bulk path."""
    centers, u, w = sample_directed_wedges(graph, psi, dist, rng, 1)
    return DirectedWedge(int(centers[0]), int(u[0]), int(w[0]), psi)


def _classify_codes(graph: DirectedGraph, psi: str, u: np.ndarray, w: np.ndarray
                    ) -> np.ndarray:
    """Triangle-type codes for psi-wedges with endpoints (u, w); -1 if open."""
    status = graph.edge_classes(u, w)
    rho = np.full(u.shape, -1, dtype=np.int8)
    closed = status >= 0
    if not closed.any():
        return rho
    class_u, class_w = _CENTER_CLASSES[psi]
    closing = status[closed]
    type_center = _PAIR_TYPE[class_u, class_w]
    type_u = _PAIR_TYPE[_MIRROR[class_u], closing]
    type_w = _PAIR_TYPE[_MIRROR[class_w], _MIRROR[closing]]
    trio = np.sort(np.stack([np.full(closing.shape, type_center, dtype=np.int8),
                             type_u, type_w]), axis=0)
    codes = _MULTISET_RHO[trio[0], trio[1], trio[2]]
    if (codes < 0).any():
        raise RuntimeError("wedge-type multiset missing from the census table")
    rho[closed] = codes
    return rho


def classify_closure(graph: DirectedGraph, wedge: DirectedWedge) -> str | None:
    """Triangle type closing the wedge, or None when the wedge is open.

    Works from the actual edge classes at the center, so the endpoint order
    inside ``wedge`` does not matter; raises ValueError if the wedge is not
    in fact of type ``wedge.psi``.
    """
    class_u = graph.edge_class(wedge.center, wedge.u)
    class_w = graph.edge_class(wedge.center, wedge.w)
    if class_u < 0 or class_w < 0 or wedge.u == wedge.w:
        raise ValueError("not a wedge: endpoints must be distinct neighbors")
    if _PAIR_TYPE[class_u, class_w] != WEDGE_TYPES.index(wedge.psi):
        raise ValueError(f"wedge is not of type {wedge.psi!r}")
    status = graph.edge_class(wedge.u, wedge.w)
    if status < 0:
        return None
    type_center = _PAIR_TYPE[class_u, class_w]
    type_u = _PAIR_TYPE[_MIRROR[class_u], status]
    type_w = _PAIR_TYPE[_MIRROR[class_w], _MIRROR[status]]
    trio = sorted((int(type_center), int(type_u), int(type_w)))
    code = int(_MULTISET_RHO[trio[0], trio[1], trio[2]])
    if code < 0:
        raise RuntimeError("wedge-type multiset missing from the census table")
    return TRIANGLE_TYPES[code]


def exact_directed_census(graph: DirectedGraph) -> DirectedCensus:
    """Classify every triangle of the underlying undirected graph."""
    counts = np.zeros(len(TRIANGLE_TYPES), dtype=np.int64)
    shadow = underlying_undirected(graph)
    for batch in triangle_batches(shadow):
        x, y, z = batch[:, 0], batch[:, 1], batch[:, 2]
        c_xy = graph.edge_classes(x, y)
        c_xz = graph.edge_classes(x, z)
        c_yz = graph.edge_classes(y, z)
        if (c_xy < 0).any() or (c_xz < 0).any() or (c_yz < 0).any():
            raise RuntimeError("triangle edge missing from the digraph")
        type_x = _PAIR_TYPE[c_xy, c_xz]
        type_y = _PAIR_TYPE[_MIRROR[c_xy], c_yz]
        type_z = _PAIR_TYPE[_MIRROR[c_xz], _MIRROR[c_yz]]
        trio = np.sort(np.stack([type_x, type_y, type_z]), axis=0)
        codes = _MULTISET_RHO[trio[0], trio[1], trio[2]]
        if (codes < 0).any():
            raise RuntimeError("wedge-type multiset missing from the census table")
        counts += np.bincount(codes, minlength=len(TRIANGLE_TYPES))
    return DirectedCensus({rho: int(c) for rho, c in zip(TRIANGLE_TYPES, counts)})


def _resolve_assignment(assignment: dict[str, str] | None) -> dict[str, str]:
    resolved = dict(DEFAULT_ASSIGNMENT)
    if assignment:
        for rho, psi in assignment.items():
            if rho not in TRIANGLE_TYPES:
                raise ValueError(f"unknown triangle type {rho!r}")
            if psi not in WEDGE_TYPES:
                raise ValueError(f"unknown wedge type {psi!r}")
            resolved[rho] = psi
    for rho, psi in resolved.items():
        if CHI[(psi, rho)] == 0:
            raise ValueError(
                f"wedge type {psi!r} cannot count triangle type {rho!r} (chi = 0)")
    return resolved


def estimate_directed_triangles(graph: DirectedGraph, cfg: SamplerConfig,
                                assignment: dict[str, str] | None = None
                                ) -> DirectedEstimates:
    """Estimate all seven T_rho via per-type wedge closure rates.

    Each wedge type psi appearing in the assignment is sampled once with k
    wedges; closures are classified and counted into every triangle type
    assigned to psi, giving T_rho ~ (k'_rho / k) * W_psi / chi(psi, rho).
    A triangle type whose wedge population is empty is reported as exact 0.
    Types with zero observed closures report 0 with the usual (large) bound.
    """
    resolved = _resolve_assignment(assignment)
    totals = directed_wedge_totals(graph)
    groups: dict[str, list[str]] = {}
    for rho in TRIANGLE_TYPES:
        groups.setdefault(resolved[rho], []).append(rho)

    k = cfg.samples
    eps = error_halfwidth(k, cfg.delta)
    results: dict[str, TriangleTypeEstimate] = {}
    for psi in WEDGE_TYPES:
        rhos = groups.get(psi)
        if not rhos:
            continue
        if totals[psi] == 0:
            for rho in rhos:
                results[rho] = TriangleTypeEstimate(rho, psi, CHI[(psi, rho)], 0,
                                                    None, True)
            continue
        dist = directed_wedge_distribution(graph, psi)
        wanted = np.asarray([TRIANGLE_TYPES.index(rho) for rho in rhos])

        def batch(rng: np.random.Generator, count: int, psi: str = psi,
                  dist: WedgeDistribution = dist, wanted: np.ndarray = wanted
                  ) -> tuple[int, ...]:
            centers, u, w = _draw_directed_wedges(graph, psi, dist, rng, count)
            codes = _classify_codes(graph, psi, u, w)
            return tuple(int(np.count_nonzero(codes == code)) for code in wanted)

        closures = _run_batches(cfg, batch, stream=WEDGE_TYPES.index(psi))
        for rho, closed in zip(rhos, closures):
            chi = CHI[(psi, rho)]
            estimate = Estimate(closed / k, eps, totals[psi] / chi, k, closed,
                                cfg.delta)
            results[rho] = TriangleTypeEstimate(rho, psi, chi, totals[psi],
                                                estimate, False)
    ordered = {rho: results[rho] for rho in TRIANGLE_TYPES}
    return DirectedEstimates(ordered, resolved, k, cfg.delta, totals)


def closure_ratio(census: DirectedCensus, totals: dict[str, int],
                  psi: str, rho: str) -> float | None:
    """Exact kappa_{psi,rho} = chi(psi,rho) * T_rho / W_psi; None if W_psi = 0."""
    if totals[psi] == 0:
        return None
    return CHI[(psi, rho)] * census.counts[rho] / totals[psi]
