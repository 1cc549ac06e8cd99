"""Immutable simple graphs with canonical edge indexing.

Edges are stored as pairs ``(u, v)`` with ``u < v`` sorted lexicographically;
the position of a pair in that order is its *canonical edge index*, which is
what percolation masks and coin streams are keyed on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    DuplicateEdgeError,
    MaskLengthMismatchError,
    SelfLoopError,
    SetsNotDisjointError,
    VertexOutOfRangeError,
)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Use :func:`build_graph` (or a generator) rather than calling the
    constructor with unchecked data.
    """

    def __init__(self, n: int, edges: np.ndarray):
        self.n = int(n)
        self._edges = _frozen(np.asarray(edges, dtype=np.int64).reshape(-1, 2))

    # -- basic structure -------------------------------------------------
    @property
    def m(self) -> int:
        return int(self._edges.shape[0])

    @property
    def edges(self) -> np.ndarray:
        return self._edges

    @cached_property
    def _csr(self):
        e = self.edges
        m = e.shape[0]
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        eid = np.concatenate([np.arange(m), np.arange(m)])
        order = np.lexsort((dst, src))
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=self.n), out=indptr[1:])
        return _frozen(indptr), _frozen(dst[order]), _frozen(eid[order])

    @property
    def indptr(self) -> np.ndarray:
        return self._csr[0]

    @property
    def indices(self) -> np.ndarray:
        return self._csr[1]

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.bincount(self.edges.ravel(), minlength=self.n).astype(np.int64)
        return _frozen(deg)

    def neighbors(self, v: int) -> np.ndarray:
        ptr = self.indptr
        return self.indices[ptr[v] : ptr[v + 1]]

    def incident_edge_ids(self, v: int) -> np.ndarray:
        """Edge indices aligned with ``neighbors(v)``."""
        ptr = self.indptr
        return self._csr[2][ptr[v] : ptr[v + 1]]

    def edge_index(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        nb = self.neighbors(u)
        j = int(np.searchsorted(nb, v))
        if j >= nb.shape[0] or nb[j] != v:
            raise KeyError((u, v))
        return int(self.incident_edge_ids(u)[j])

    def endpoints(self, idx) -> tuple[np.ndarray, np.ndarray]:
        e = self.edges[np.asarray(idx, dtype=np.int64)]
        return e[:, 0], e[:, 1]

    def regular_degree(self) -> int | None:
        """Common degree if the graph is regular, else ``None``."""
        deg = self.degrees
        if self.n == 0:
            return 0
        d = int(deg[0])
        return d if bool(np.all(deg == d)) else None

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    # -- set queries -----------------------------------------------------
    def boundary_size(self, member: np.ndarray) -> int:
        e = self.edges
        return int(np.count_nonzero(member[e[:, 0]] != member[e[:, 1]]))

    def cut_size(self, a: np.ndarray, b: np.ndarray) -> int:
        e = self.edges
        u, v = e[:, 0], e[:, 1]
        return int(np.count_nonzero((a[u] & b[v]) | (b[u] & a[v])))

    def neighbor_counts(self, member: np.ndarray) -> np.ndarray:
        """Per-vertex number of neighbours inside ``member``."""
        e = self.edges
        w = member.astype(np.int64)
        cnt = np.bincount(e[:, 0], weights=w[e[:, 1]], minlength=self.n)
        cnt += np.bincount(e[:, 1], weights=w[e[:, 0]], minlength=self.n)
        return cnt.astype(np.int64)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, m={self.m})"


class CompleteGraph(Graph):
    """K_n with closed-form edge indexing; edge arrays are only built on demand.

    Percolation, censuses and set counts never touch the edge list, which
    keeps K_50000 (1.25e9 edges) usable.
    """

    def __init__(self, n: int):
        self.n = int(n)

    @property
    def m(self) -> int:
        return self.n * (self.n - 1) // 2

    @cached_property
    def _offsets(self) -> np.ndarray:
        # first canonical index of row u: u*n - u*(u+1)/2
        u = np.arange(self.n + 1, dtype=np.int64)
        return u * self.n - u * (u + 1) // 2

    @cached_property
    def _edges(self) -> np.ndarray:
        u, v = np.triu_indices(self.n, k=1)
        return _frozen(np.stack([u, v], axis=1).astype(np.int64))

    @cached_property
    def degrees(self) -> np.ndarray:
        return _frozen(np.full(self.n, self.n - 1, dtype=np.int64))

    def neighbors(self, v: int) -> np.ndarray:
        a = np.arange(self.n, dtype=np.int64)
        return np.delete(a, v)

    def incident_edge_ids(self, v: int) -> np.ndarray:
        nb = self.neighbors(v)
        lo = np.minimum(nb, v)
        hi = np.maximum(nb, v)
        return self._offsets[lo] + (hi - lo - 1)

    def edge_index(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        if u == v or not 0 <= u < self.n or not 0 <= v < self.n:
            raise KeyError((u, v))
        return int(self._offsets[u] + (v - u - 1))

    def endpoints(self, idx) -> tuple[np.ndarray, np.ndarray]:
        idx = np.asarray(idx, dtype=np.int64)
        u = np.searchsorted(self._offsets, idx, side="right") - 1
        v = idx - self._offsets[u] + u + 1
        return u, v

    def boundary_size(self, member: np.ndarray) -> int:
        k = int(np.count_nonzero(member))
        return k * (self.n - k)

    def cut_size(self, a: np.ndarray, b: np.ndarray) -> int:
        return int(np.count_nonzero(a)) * int(np.count_nonzero(b))

    def neighbor_counts(self, member: np.ndarray) -> np.ndarray:
        return int(np.count_nonzero(member)) - member.astype(np.int64)


def build_graph(n: int, pairs) -> Graph:
    """Validate and canonicalise an edge list.

    Raises SelfLoopError, DuplicateEdgeError or VertexOutOfRangeError naming
    the first offending pair (in input order).
    """
    n = int(n)
    if n < 0:
        raise VertexOutOfRangeError(f"vertex count must be nonnegative, got {n}")
    arr = np.asarray(pairs, dtype=np.int64)
    if arr.size == 0:
        return Graph(n, np.empty((0, 2), dtype=np.int64))
    arr = arr.reshape(-1, 2)
    bad = np.flatnonzero(((arr < 0) | (arr >= n)).any(axis=1))
    if bad.size:
        u, v = arr[bad[0]]
        raise VertexOutOfRangeError(f"pair ({u}, {v}) has a vertex outside 0..{n - 1}")
    loops = np.flatnonzero(arr[:, 0] == arr[:, 1])
    if loops.size:
        u, v = arr[loops[0]]
        raise SelfLoopError(f"pair ({u}, {v}) is a self-loop")
    lo = np.minimum(arr[:, 0], arr[:, 1])
    hi = np.maximum(arr[:, 0], arr[:, 1])
    code = lo * n + hi
    order = np.argsort(code, kind="stable")
    sc = code[order]
    dup = np.flatnonzero(sc[1:] == sc[:-1])
    if dup.size:
        # report the later occurrence in input order
        first = order[dup + 1].min()
        u, v = arr[first]
        raise DuplicateEdgeError(f"pair ({u}, {v}) duplicates an earlier edge")
    edges = np.stack([lo[order], hi[order]], axis=1)
    return Graph(n, edges)


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, np.ndarray]:
    """Subgraph induced on ``vertices``; returns it with the old ids of the new vertices."""
    keep = _as_mask(g, vertices)
    ids = np.flatnonzero(keep)
    relabel = np.full(g.n, -1, dtype=np.int64)
    relabel[ids] = np.arange(ids.shape[0])
    e = g.edges
    sel = keep[e[:, 0]] & keep[e[:, 1]]
    # relabelling is monotone, so canonical order is preserved
    return Graph(ids.shape[0], relabel[e[sel]]), ids


# ---------------------------------------------------------------------------
# vertex sets


class VertexSet:
    """Subset of ``0..n-1`` stored as an indicator array."""

    __slots__ = ("_member", "_card")

    def __init__(self, member: np.ndarray):
        m = np.array(member, dtype=bool, copy=True).ravel()
        self._member = _frozen(m)
        self._card = int(np.count_nonzero(m))

    @classmethod
    def from_ids(cls, n: int, ids: Iterable[int]) -> "VertexSet":
        ids = np.fromiter((int(i) for i in ids), dtype=np.int64)
        if ids.size and (ids.min() < 0 or ids.max() >= n):
            bad = ids[(ids < 0) | (ids >= n)][0]
            raise VertexOutOfRangeError(f"vertex {bad} outside 0..{n - 1}")
        m = np.zeros(n, dtype=bool)
        m[ids] = True
        return cls(m)

    @property
    def n(self) -> int:
        return self._member.shape[0]

    @property
    def member(self) -> np.ndarray:
        return self._member

    @property
    def ids(self) -> np.ndarray:
        return np.flatnonzero(self._member)

    def complement(self) -> "VertexSet":
        return VertexSet(~self._member)

    def __len__(self):
        return self._card

    def __contains__(self, v):
        return 0 <= v < self.n and bool(self._member[v])

    def __iter__(self):
        return iter(self.ids.tolist())

    def __eq__(self, other):
        if not isinstance(other, VertexSet):
            return NotImplemented
        return np.array_equal(self._member, other._member)

    def __hash__(self):
        return hash(self._member.tobytes())

    def __repr__(self):
        ids = self.ids
        body = ", ".join(map(str, ids[:10].tolist())) + (", ..." if ids.size > 10 else "")
        return f"VertexSet(n={self.n}, {{{body}}})"


def _as_mask(g: Graph, s) -> np.ndarray:
    if isinstance(s, VertexSet):
        if s.n != g.n:
            raise VertexOutOfRangeError(f"vertex set over {s.n} vertices used with a graph on {g.n}")
        return s.member
    arr = np.asarray(s)
    if arr.dtype == bool:
        if arr.shape != (g.n,):
            raise VertexOutOfRangeError(f"indicator of length {arr.shape} for a graph on {g.n}")
        return arr
    return VertexSet.from_ids(g.n, arr.ravel().tolist()).member


def edge_boundary(g: Graph, s) -> int:
    """Number of edges with exactly one endpoint in ``s``."""
    return g.boundary_size(_as_mask(g, s))


def cut_edges(g: Graph, a, b) -> int:
    """Number of edges between disjoint sets ``a`` and ``b``."""
    ma, mb = _as_mask(g, a), _as_mask(g, b)
    both = np.flatnonzero(ma & mb)
    if both.size:
        raise SetsNotDisjointError(f"vertex {both[0]} lies in both sets")
    return g.cut_size(ma, mb)


# ---------------------------------------------------------------------------
# component census


@dataclass(frozen=True, eq=False)
class ComponentCensus:
    """Components ranked by size (descending), ties by smallest member id.

    ``component_id[v]`` is the rank of v's component, so component 0 is the
    largest.
    """

    component_id: np.ndarray
    sizes: np.ndarray

    @property
    def n(self) -> int:
        return int(self.component_id.shape[0])

    @property
    def count(self) -> int:
        return int(self.sizes.shape[0])

    @property
    def L1(self) -> int:
        return int(self.sizes[0]) if self.sizes.size else 0

    @property
    def L2(self) -> int:
        return int(self.sizes[1]) if self.sizes.size > 1 else 0

    def vertex_sizes(self) -> np.ndarray:
        """Size of the component containing each vertex."""
        return self.sizes[self.component_id]

    def members(self, rank: int) -> np.ndarray:
        return np.flatnonzero(self.component_id == rank)

    def same_as(self, other: "ComponentCensus") -> bool:
        return np.array_equal(self.component_id, other.component_id) and np.array_equal(
            self.sizes, other.sizes
        )


def census_from_labels(labels: np.ndarray) -> ComponentCensus:
    """Canonical census from any labelling that is constant exactly on components."""
    labels = np.asarray(labels)
    uniq, inv, first, counts = _unique_full(labels)
    order = np.lexsort((first, -counts))
    rank = np.empty_like(order)
    rank[order] = np.arange(order.shape[0])
    cid = rank[inv].astype(np.int64)
    return ComponentCensus(_frozen(cid), _frozen(counts[order].astype(np.int64)))


def _unique_full(labels):
    uniq, first, inv, counts = np.unique(
        labels, return_index=True, return_inverse=True, return_counts=True
    )
    return uniq, inv.ravel(), first, counts


def kept_edge_ids(g: Graph, mask) -> np.ndarray:
    """Normalise a mask argument (bool array, index array holder or sample) to kept indices."""
    if mask is None:
        return None
    kept = getattr(mask, "kept", None)
    if kept is not None:
        return kept
    arr = np.asarray(mask)
    if arr.dtype != bool:
        raise TypeError("mask must be a boolean keep-array or a PercolationSample")
    if arr.shape != (g.m,):
        raise MaskLengthMismatchError(f"mask has length {arr.shape[0]}, graph has {g.m} edges")
    return np.flatnonzero(arr)


def components(g: Graph, mask=None) -> ComponentCensus:
    """Connected components of ``g`` or of its masked spanning subgraph."""
    kept = kept_edge_ids(g, mask)
    if kept is None:
        u, v = g.edges[:, 0], g.edges[:, 1]
    else:
        u, v = g.endpoints(kept)
    if g.n == 0:
        return ComponentCensus(np.empty(0, np.int64), np.empty(0, np.int64))
    adj = coo_matrix((np.ones(u.shape[0], dtype=np.int8), (u, v)), shape=(g.n, g.n))
    _, labels = connected_components(adj, directed=False)
    return census_from_labels(labels)


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or components(g).count == 1
