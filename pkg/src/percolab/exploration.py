"""Queue-based exploration with deferred decisions, and size-class censuses.

Threshold rounding: the real thresholds ln(d)^2, delta*d and delta^5*d are
compared with non-strict inequalities against integer sizes/counts.
Equivalently V_S uses ``size <= floor(ln^2 d)``, V_L uses
``size >= ceil(delta*d)`` and W_L uses ``count >= ceil(delta^5*d)``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import InvalidPermutationError, NotRegularError
from .graph import ComponentCensus, Graph, VertexSet, census_from_labels, components


@dataclass(frozen=True, eq=False)
class BfsTrace:
    order: np.ndarray
    queries: list  # (time, edge index, outcome)
    forest_edges: list
    component_starts: list  # query time at which each component was seeded
    census: ComponentCensus

    @property
    def n_queries(self) -> int:
        return len(self.queries)


def _coin_from(g: Graph, coin):
    if callable(coin):
        return coin
    keep = getattr(coin, "keep", None)
    if keep is None:
        keep = np.asarray(coin, dtype=bool)
    if keep.shape != (g.m,):
        raise ValueError(f"coin mask has length {keep.shape[0]}, graph has {g.m} edges")
    return lambda i: bool(keep[i])


def bfs_explore(g: Graph, coin, order=None) -> BfsTrace:
    """Explore the components of the percolated graph, querying one edge per step.

    ``coin`` answers whether queried edge ``i`` is present: a callable, a
    boolean keep-array, or a PercolationSample. ``order`` is the vertex order
    sigma (identity by default); it fixes both the seeding order and the
    order in which neighbours of the queue head are queried.
    """
    n = g.n
    sigma = np.arange(n) if order is None else np.asarray(order, dtype=np.int64)
    if sigma.shape != (n,) or not np.array_equal(np.sort(sigma), np.arange(n)):
        raise InvalidPermutationError("order must be a permutation of the vertex ids")
    ask = _coin_from(g, coin)
    rank = np.empty(n, dtype=np.int64)
    rank[sigma] = np.arange(n)

    unexplored = np.ones(n, dtype=bool)
    label = np.full(n, -1, dtype=np.int64)
    queue: deque[int] = deque()
    queries, forest, starts = [], [], []
    t = 0
    next_seed = 0
    comp = -1
    while True:
        if not queue:
            while next_seed < n and not unexplored[sigma[next_seed]]:
                next_seed += 1
            if next_seed == n:
                break
            s = int(sigma[next_seed])
            unexplored[s] = False
            comp += 1
            label[s] = comp
            starts.append(t)
            queue.append(s)
            continue
        v = queue[0]
        nb = g.neighbors(v)
        eid = g.incident_edge_ids(v)
        for j in np.argsort(rank[nb], kind="stable"):
            u = int(nb[j])
            if not unexplored[u]:
                continue
            t += 1
            i = int(eid[j])
            hit = bool(ask(i))
            queries.append((t, i, hit))
            if hit:
                unexplored[u] = False
                label[u] = comp
                forest.append(i)
                queue.append(u)
        queue.popleft()
    return BfsTrace(sigma, queries, forest, starts, census_from_labels(label))


# ---------------------------------------------------------------------------
# size classes


@dataclass(frozen=True, eq=False)
class SetCensus:
    small_threshold: float  # ln(d)^2
    large_threshold: float  # delta * d
    heavy_threshold: float  # delta^5 * d
    V_S: VertexSet
    V_L: VertexSet
    W_L: VertexSet
    delta: float
    census: ComponentCensus

    def sizes(self) -> dict:
        return {"vs": len(self.V_S), "vl": len(self.V_L), "wl": len(self.W_L)}


def size_thresholds(d: int, delta: float) -> tuple[float, float, float]:
    return math.log(d) ** 2, delta * d, delta**5 * d


def census_sets(g: Graph, sample, delta: float) -> SetCensus:
    """Classify vertices by the size of their component in the sample.

    V_S: component size <= ln^2 d; V_L: size >= delta d; W_L: vertices with
    at least delta^5 d host-graph neighbours in V_L.
    """
    d = g.regular_degree()
    if d is None or d < 2:
        raise NotRegularError("census_sets needs a regular host graph of degree >= 2")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    small, large, heavy = size_thresholds(d, delta)
    cen = components(g, sample)
    vsize = cen.vertex_sizes()
    vs = vsize <= math.floor(small)
    vl = vsize >= math.ceil(large)
    wl = g.neighbor_counts(vl) >= math.ceil(heavy)
    return SetCensus(small, large, heavy, VertexSet(vs), VertexSet(vl), VertexSet(wl), delta, cen)


def band_mass(census: ComponentCensus, lo: float, hi: float) -> int:
    """Number of vertices in components with lo <= size <= hi."""
    s = census.sizes
    return int(s[(s >= lo) & (s <= hi)].sum())


def component_metrics(census: ComponentCensus, bands=()) -> dict:
    """L1, L2, component count and the vertex mass of each size band.

    ``bands`` holds inclusive (lo, hi) pairs; masses come back in the same
    order under ``band_mass``.
    """
    return {
        "L1": census.L1,
        "L2": census.L2,
        "n_components": census.count,
        "band_mass": [band_mass(census, lo, hi) for lo, hi in bands],
    }
