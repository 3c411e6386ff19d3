"""Edge-list parsing and immutable graph containers.

Graphs are simple: self-loops and duplicate edges are dropped at load time.
Vertex ids found in the input are compacted to 0..n-1 (the sorted original
ids are retained in ``labels`` for reporting). Adjacency is stored in sorted
CSR arrays, so neighbor lists are contiguous slices and membership tests are
binary searches.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property
from typing import IO, Iterable, Iterator

import numpy as np

from .errors import ParseError

__all__ = [
    "UndirectedGraph",
    "DirectedGraph",
    "DegreeIndex",
    "DegreeBinning",
    "load_undirected",
    "load_directed",
    "dump_undirected",
    "dump_directed",
    "wedge_count_vertex",
    "underlying_undirected",
]

_Source = "str | os.PathLike[str] | IO"


def _read_text(source) -> str:
    """Return the full text of a path or file-like source (UTF-8)."""
    if hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        return data
    with open(os.fspath(source), "rb") as handle:
        return handle.read().decode("utf-8")


def _parse_pairs(source) -> np.ndarray:
    """Parse an edge list into an (k, 2) int64 array of raw vertex ids.

    One edge per line, two integer tokens separated by whitespace. Lines
    starting with '#' and blank lines are ignored. Extra tokens after the
    first two are ignored (weighted-edge dumps). A line with fewer than two
    tokens, or non-integer tokens, raises ParseError with its line number.
    """
    text = _read_text(source)
    rows: list[tuple[int, int]] = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) < 2:
            raise ParseError(line_number, f"expected two integer tokens, got {stripped!r}")
        try:
            u = int(parts[0])
            v = int(parts[1])
        except ValueError:
            raise ParseError(line_number, f"non-integer vertex id in {stripped!r}") from None
        rows.append((u, v))
    if not rows:
        return np.empty((0, 2), dtype=np.int64)
    return np.asarray(rows, dtype=np.int64)


def _compact(pairs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Map raw ids to dense 0..n-1 ids; returns (labels, compacted pairs)."""
    if pairs.size == 0:
        return np.empty(0, dtype=np.int64), pairs
    labels, inverse = np.unique(pairs, return_inverse=True)
    return labels, inverse.reshape(pairs.shape).astype(np.int64, copy=False)


def _csr_from_sorted(src: np.ndarray, dst: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Build (indptr, indices) from dart arrays already sorted by (src, dst)."""
    counts = np.bincount(src, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, dst.astype(np.int64, copy=False)


def _freeze(*arrays: np.ndarray) -> None:
    for arr in arrays:
        arr.flags.writeable = False


def _member_sorted(haystack: np.ndarray, needles: np.ndarray) -> np.ndarray:
    """Vectorized membership of needles in a sorted array."""
    pos = np.searchsorted(haystack, needles)
    pos_clipped = np.minimum(pos, max(haystack.size - 1, 0))
    if haystack.size == 0:
        return np.zeros(needles.shape, dtype=bool)
    return haystack[pos_clipped] == needles


class UndirectedGraph:
    """Immutable simple undirected graph in sorted CSR form.

    ``indices[indptr[v]:indptr[v+1]]`` is the strictly ascending neighbor
    list of vertex v; ``labels[v]`` is the original input id.
    """

    def __init__(self, indptr: np.ndarray, indices: np.ndarray, labels: np.ndarray) -> None:
        self.indptr = indptr
        self.indices = indices
        self.labels = labels
        _freeze(indptr, indices, labels)

    @classmethod
    def from_edges(cls, pairs: Iterable[tuple[int, int]] | np.ndarray) -> "UndirectedGraph":
        """Build a graph from raw (u, v) pairs, applying the load rules."""
        pairs = np.asarray(list(pairs) if not isinstance(pairs, np.ndarray) else pairs,
                           dtype=np.int64).reshape(-1, 2)
        labels, compacted = _compact(pairs)
        return cls._from_compacted(compacted, labels)

    @classmethod
    def _from_compacted(cls, pairs: np.ndarray, labels: np.ndarray) -> "UndirectedGraph":
        n = labels.size
        if pairs.size:
            u, v = pairs[:, 0], pairs[:, 1]
            keep = u != v
            u, v = u[keep], v[keep]
            lo, hi = np.minimum(u, v), np.maximum(u, v)
            keys = np.unique(lo * n + hi) if lo.size else np.empty(0, dtype=np.int64)
            lo, hi = keys // n, keys % n
        else:
            lo = hi = np.empty(0, dtype=np.int64)
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        indptr, indices = _csr_from_sorted(src[order], dst[order], n)
        return cls(indptr, indices, labels)

    @property
    def n(self) -> int:
        return self.indptr.size - 1

    @property
    def m(self) -> int:
        return self.indices.size // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = self.indptr[1:] - self.indptr[:-1]
        _freeze(deg)
        return deg

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.degrees[v])

    def has_edge(self, u: int, v: int) -> bool:
        """Membership via binary search on the smaller adjacency list."""
        if self.degrees[u] > self.degrees[v]:
            u, v = v, u
        row = self.neighbors(u)
        pos = int(np.searchsorted(row, v))
        return pos < row.size and int(row[pos]) == v

    @cached_property
    def _edge_keys(self) -> np.ndarray:
        # Flat keys src*n+dst over all darts; globally sorted because CSR is.
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        keys = src * self.n + self.indices
        _freeze(keys)
        return keys

    def has_edges(self, u: np.ndarray, w: np.ndarray) -> np.ndarray:
        """Vectorized edge membership for aligned endpoint arrays."""
        return _member_sorted(self._edge_keys, u.astype(np.int64) * self.n + w)

    def wedge_count(self, v: int) -> int:
        """Number of wedges centered at v: d_v(d_v - 1)/2."""
        d = int(self.degrees[v])
        return d * (d - 1) // 2

    @cached_property
    def wedge_counts(self) -> np.ndarray:
        d = self.degrees.astype(np.int64)
        counts = d * (d - 1) // 2
        _freeze(counts)
        return counts

    @property
    def total_wedges(self) -> int:
        return int(self.wedge_counts.sum()) if self.n else 0

    def edge_array(self) -> np.ndarray:
        """Canonical (m, 2) array of internal-id edges with u < v, sorted."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        mask = src < self.indices
        return np.column_stack([src[mask], self.indices[mask]])

    @cached_property
    def degree_index(self) -> "DegreeIndex":
        return DegreeIndex(self.degrees)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return (np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices)
                and np.array_equal(self.labels, other.labels))

    def __hash__(self) -> int:  # identity hash; arrays are not hashable
        return id(self)

    def __repr__(self) -> str:
        return f"UndirectedGraph(n={self.n}, m={self.m})"


# Edge classes from the perspective of the first vertex of an ordered query.
EDGE_NONE = -1
EDGE_OUT = 0   # one-way u -> w
EDGE_IN = 1    # one-way w -> u
EDGE_RECIP = 2


class DirectedGraph:
    """Immutable simple digraph with one-way and reciprocal edge classes.

    A mutual pair {(u, w), (w, u)} is stored as a reciprocal edge: w appears
    in ``recip`` of u and vice versa, and in neither one-way list. The three
    per-vertex lists are disjoint, sorted, and exclude the vertex itself.
    """

    def __init__(self, out_ptr, out_idx, in_ptr, in_idx, rec_ptr, rec_idx, labels) -> None:
        self.out_ptr, self.out_idx = out_ptr, out_idx
        self.in_ptr, self.in_idx = in_ptr, in_idx
        self.rec_ptr, self.rec_idx = rec_ptr, rec_idx
        self.labels = labels
        _freeze(out_ptr, out_idx, in_ptr, in_idx, rec_ptr, rec_idx, labels)

    @classmethod
    def from_edges(cls, darts: Iterable[tuple[int, int]] | np.ndarray) -> "DirectedGraph":
        """Build a digraph from raw ordered (u, w) pairs, applying load rules."""
        darts = np.asarray(list(darts) if not isinstance(darts, np.ndarray) else darts,
                           dtype=np.int64).reshape(-1, 2)
        labels, compacted = _compact(darts)
        return cls._from_compacted(compacted, labels)

    @classmethod
    def _from_compacted(cls, darts: np.ndarray, labels: np.ndarray) -> "DirectedGraph":
        n = labels.size
        if darts.size:
            u, w = darts[:, 0], darts[:, 1]
            keep = u != w
            u, w = u[keep], w[keep]
            keys = np.unique(u * n + w) if u.size else np.empty(0, dtype=np.int64)
            u, w = keys // n, keys % n
            reciprocal = _member_sorted(keys, w * n + u)
        else:
            u = w = np.empty(0, dtype=np.int64)
            reciprocal = np.empty(0, dtype=bool)
        ou, ow = u[~reciprocal], w[~reciprocal]
        ru, rw = u[reciprocal], w[reciprocal]
        out_ptr, out_idx = _csr_from_sorted(ou, ow, n)
        rec_ptr, rec_idx = _csr_from_sorted(ru, rw, n)
        in_order = np.lexsort((ou, ow))
        in_ptr, in_idx = _csr_from_sorted(ow[in_order], ou[in_order], n)
        return cls(out_ptr, out_idx, in_ptr, in_idx, rec_ptr, rec_idx, labels)

    @property
    def n(self) -> int:
        return self.out_ptr.size - 1

    @cached_property
    def dout(self) -> np.ndarray:
        d = self.out_ptr[1:] - self.out_ptr[:-1]
        _freeze(d)
        return d

    @cached_property
    def din(self) -> np.ndarray:
        d = self.in_ptr[1:] - self.in_ptr[:-1]
        _freeze(d)
        return d

    @cached_property
    def drec(self) -> np.ndarray:
        d = self.rec_ptr[1:] - self.rec_ptr[:-1]
        _freeze(d)
        return d

    def out_only(self, v: int) -> np.ndarray:
        return self.out_idx[self.out_ptr[v]:self.out_ptr[v + 1]]

    def in_only(self, v: int) -> np.ndarray:
        return self.in_idx[self.in_ptr[v]:self.in_ptr[v + 1]]

    def recip(self, v: int) -> np.ndarray:
        return self.rec_idx[self.rec_ptr[v]:self.rec_ptr[v + 1]]

    @property
    def reciprocal_pairs(self) -> int:
        return self.rec_idx.size // 2

    @property
    def one_way_count(self) -> int:
        return self.out_idx.size

    @property
    def directed_edge_count(self) -> int:
        """Directed edges after dedup: one-way darts plus both of each pair."""
        return self.out_idx.size + self.rec_idx.size

    @property
    def reciprocity(self) -> float | None:
        """2 * (reciprocal pairs) / (directed edges); None on empty graphs."""
        if self.directed_edge_count == 0:
            return None
        return self.rec_idx.size / self.directed_edge_count

    def _keys(self, ptr: np.ndarray, idx: np.ndarray) -> np.ndarray:
        src = np.repeat(np.arange(self.n, dtype=np.int64), ptr[1:] - ptr[:-1])
        keys = src * self.n + idx
        _freeze(keys)
        return keys

    @cached_property
    def _out_keys(self) -> np.ndarray:
        return self._keys(self.out_ptr, self.out_idx)

    @cached_property
    def _in_keys(self) -> np.ndarray:
        return self._keys(self.in_ptr, self.in_idx)

    @cached_property
    def _rec_keys(self) -> np.ndarray:
        return self._keys(self.rec_ptr, self.rec_idx)

    def edge_classes(self, u: np.ndarray, w: np.ndarray) -> np.ndarray:
        """Class of the (u, w) connection for aligned arrays.

        Returns EDGE_OUT / EDGE_IN / EDGE_RECIP / EDGE_NONE per position,
        always from the perspective of u.
        """
        queries = u.astype(np.int64) * self.n + w
        out = np.full(queries.shape, EDGE_NONE, dtype=np.int8)
        out[_member_sorted(self._out_keys, queries)] = EDGE_OUT
        out[_member_sorted(self._in_keys, queries)] = EDGE_IN
        out[_member_sorted(self._rec_keys, queries)] = EDGE_RECIP
        return out

    def edge_class(self, u: int, w: int) -> int:
        return int(self.edge_classes(np.asarray([u]), np.asarray([w]))[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        mine = (self.out_ptr, self.out_idx, self.in_ptr, self.in_idx,
                self.rec_ptr, self.rec_idx, self.labels)
        theirs = (other.out_ptr, other.out_idx, other.in_ptr, other.in_idx,
                  other.rec_ptr, other.rec_idx, other.labels)
        return all(np.array_equal(a, b) for a, b in zip(mine, theirs))

    def __hash__(self) -> int:
        return id(self)

    def __repr__(self) -> str:
        return (f"DirectedGraph(n={self.n}, one_way={self.one_way_count}, "
                f"reciprocal_pairs={self.reciprocal_pairs})")


def load_undirected(source) -> UndirectedGraph:
    """Load an undirected graph from an edge-list path or file-like source.

    Directionality is ignored; repeated edges and self-loops are dropped.
    Empty input yields the empty graph, not an error.
    """
    labels, pairs = _compact(_parse_pairs(source))
    return UndirectedGraph._from_compacted(pairs, labels)


def load_directed(source) -> DirectedGraph:
    """Load a digraph, classifying mutual pairs as reciprocal edges."""
    labels, darts = _compact(_parse_pairs(source))
    return DirectedGraph._from_compacted(darts, labels)


def dump_undirected(graph: UndirectedGraph, sink) -> None:
    """Write one 'u v' line per edge, using original labels, canonical order."""
    _dump_lines(graph.labels[graph.edge_array()], sink)


def dump_directed(graph: DirectedGraph, sink) -> None:
    """Write one line per directed edge (both directions of reciprocal pairs)."""
    parts = []
    for ptr, idx in ((graph.out_ptr, graph.out_idx), (graph.rec_ptr, graph.rec_idx)):
        src = np.repeat(np.arange(graph.n, dtype=np.int64), ptr[1:] - ptr[:-1])
        parts.append(np.column_stack([src, idx]))
    _dump_lines(graph.labels[np.concatenate(parts)] if parts else np.empty((0, 2)), sink)


def _dump_lines(pairs: np.ndarray, sink) -> None:
    text = "".join(f"{u} {v}\n" for u, v in pairs.tolist())
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(os.fspath(sink), "w", encoding="utf-8") as handle:
            handle.write(text)


def wedge_count_vertex(graph: UndirectedGraph, v: int) -> int:
    """Wedges centered at v: (d_v choose 2)."""
    return graph.wedge_count(v)


def underlying_undirected(graph: DirectedGraph) -> UndirectedGraph:
    """Undirected shadow: one edge per connected pair, any class; same labels."""
    parts = []
    for ptr, idx in ((graph.out_ptr, graph.out_idx), (graph.rec_ptr, graph.rec_idx)):
        src = np.repeat(np.arange(graph.n, dtype=np.int64), ptr[1:] - ptr[:-1])
        parts.append(np.column_stack([src, idx]))
    pairs = np.concatenate(parts) if parts else np.empty((0, 2), dtype=np.int64)
    return UndirectedGraph._from_compacted(pairs, graph.labels)


class DegreeIndex:
    """Mapping from degree d to the array of vertices with that degree."""

    def __init__(self, degrees: np.ndarray) -> None:
        order = np.argsort(degrees, kind="stable")
        sorted_deg = degrees[order]
        boundaries = np.flatnonzero(np.diff(sorted_deg)) + 1
        groups = np.split(order, boundaries)
        self._by_degree: dict[int, np.ndarray] = {}
        for group in groups:
            if group.size:
                _freeze(group)
                self._by_degree[int(degrees[group[0]])] = group

    @property
    def observed_degrees(self) -> list[int]:
        return sorted(self._by_degree)

    def vertices(self, d: int) -> np.ndarray:
        return self._by_degree.get(d, np.empty(0, dtype=np.int64))

    def count(self, d: int) -> int:
        return self.vertices(d).size


@dataclass(frozen=True)
class DegreeBinning:
    """Ordered, disjoint half-open degree ranges (lo, hi] with lo >= 1."""

    bins: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        previous_hi = 0
        for lo, hi in self.bins:
            if lo < 1 or hi <= lo:
                raise ValueError(f"invalid bin ({lo}, {hi}]")
            if lo < previous_hi:
                raise ValueError(f"overlapping or unordered bin ({lo}, {hi}]")
            previous_hi = hi

    @classmethod
    def logarithmic(cls, max_degree: int) -> "DegreeBinning":
        """Bins (2^{i-1}, 2^i] covering degrees 2..max_degree."""
        if max_degree < 2:
            return cls(())
        top = math.ceil(math.log2(max_degree))
        return cls(tuple((2 ** (i - 1), 2 ** i) for i in range(1, top + 1)))

    @classmethod
    def singletons(cls, degrees: Iterable[int]) -> "DegreeBinning":
        """One bin (d-1, d] per distinct degree >= 2."""
        wanted = sorted({int(d) for d in degrees if d >= 2})
        return cls(tuple((d - 1, d) for d in wanted))

    @classmethod
    def from_bounds(cls, bounds: Iterable[int]) -> "DegreeBinning":
        """Explicit upper bounds b1 < b2 < ... giving (1, b1], (b1, b2], ..."""
        edges = [1] + [int(b) for b in bounds]
        return cls(tuple(zip(edges[:-1], edges[1:])))

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.bins)

    def __len__(self) -> int:
        return len(self.bins)
