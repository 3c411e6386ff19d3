"""Exact and wedge-sampled triangle statistics for large graphs.

The library computes transitivity, local and degree-wise clustering
coefficients, triangles per degree class, and the seven-type directed
triangle census, either exactly (by degree-ordered enumeration) or by
uniform wedge sampling with Hoeffding error guarantees. The ``triadic``
CLI exposes the same analyses over edge-list files.
"""

from .directed import (
    CANONICAL_WEDGES,
    CHI,
    DEFAULT_ASSIGNMENT,
    TRIANGLE_TYPES,
    WEDGE_TYPES,
    DirectedCensus,
    DirectedEstimates,
    DirectedWedge,
    TriangleTypeEstimate,
    classify_closure,
    closure_ratio,
    directed_wedge_distribution,
    directed_wedge_totals,
    estimate_directed_triangles,
    exact_directed_census,
    per_vertex_wedge_counts,
    sample_directed_wedge,
    sample_directed_wedges,
)
from .errors import (
    DegenerateDegreeError,
    EmptyGraphError,
    NoSuchDegreeError,
    NoWedgesError,
    ParseError,
    TriadicError,
)
from .exact import ExactStats, enumerate_triangles, exact_stats, triangle_batches
from .graphs import (
    EDGE_IN,
    EDGE_NONE,
    EDGE_OUT,
    EDGE_RECIP,
    DegreeBinning,
    DegreeIndex,
    DirectedGraph,
    UndirectedGraph,
    dump_directed,
    dump_undirected,
    load_directed,
    load_undirected,
    underlying_undirected,
    wedge_count_vertex,
)
from .sampling import (
    BATCH_SIZE,
    BinEstimate,
    Estimate,
    SamplerConfig,
    WedgeDistribution,
    error_halfwidth,
    estimate_binned_cc,
    estimate_binned_tri,
    estimate_degree_cc,
    estimate_local_cc,
    estimate_transitivity,
    estimate_tri_per_degree,
    sample_uniform_wedge,
    sample_uniform_wedges,
    samples_needed,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # graphs
    "UndirectedGraph", "DirectedGraph", "DegreeIndex", "DegreeBinning",
    "load_undirected", "load_directed", "dump_undirected", "dump_directed",
    "wedge_count_vertex", "underlying_undirected",
    "EDGE_NONE", "EDGE_OUT", "EDGE_IN", "EDGE_RECIP",
    # exact
    "ExactStats", "enumerate_triangles", "exact_stats", "triangle_batches",
    # sampling
    "BATCH_SIZE", "samples_needed", "error_halfwidth", "SamplerConfig",
    "Estimate", "BinEstimate", "WedgeDistribution", "sample_uniform_wedge",
    "sample_uniform_wedges", "estimate_transitivity", "estimate_local_cc",
    "estimate_degree_cc", "estimate_binned_cc", "estimate_tri_per_degree",
    "estimate_binned_tri",
    # directed
    "WEDGE_TYPES", "TRIANGLE_TYPES", "CANONICAL_WEDGES", "CHI",
    "DEFAULT_ASSIGNMENT", "DirectedWedge", "DirectedCensus",
    "TriangleTypeEstimate", "DirectedEstimates", "per_vertex_wedge_counts",
    "directed_wedge_totals", "directed_wedge_distribution",
    "sample_directed_wedge", "sample_directed_wedges", "classify_closure",
    "exact_directed_census", "estimate_directed_triangles", "closure_ratio",
    # errors
    "TriadicError", "ParseError", "EmptyGraphError", "NoWedgesError",
    "NoSuchDegreeError", "DegenerateDegreeError",
]
