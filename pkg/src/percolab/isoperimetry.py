"""Bounds on the isoperimetric constant i(G) and its size-restricted versions.

* :func:`iso_exact` - exhaustive minimum of boundary/size over a size range.
* :func:`iso_spectral_lower` - ``(d - lambda_2)/2`` from power iteration.
* :func:`iso_sampled_upper` - best ratio over sampled and structured sets.
* :func:`expansion_core` - repeatedly strip poorly expanding small sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numba as nb
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order

from .errors import (
    BudgetExceededError,
    GuaranteeViolatedError,
    InvalidParamsError,
    NoConvergenceError,
    NotConnectedError,
    NotRegularError,
)
from .graph import Graph, VertexSet, induced_subgraph, is_connected

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True, eq=False)
class IsoResult:
    value: float
    fraction: Fraction | None
    method: str  # exact | spectral-lower | sampled-upper
    size_range: tuple[int, int] | None
    witness: VertexSet | None
    info: dict = field(default_factory=dict)

    def __float__(self):
        return self.value


def _better(r1: Fraction, w1: list, r2: Fraction, w2: list) -> bool:
    """True if (r1, w1) beats (r2, w2): smaller ratio, then lexicographically smaller witness."""
    if r2 is None:
        return True
    return r1 < r2 or (r1 == r2 and w1 < w2)


# ---------------------------------------------------------------------------
# exhaustive search


@nb.njit(inline="always")
def _adjacent(indptr, indices, a, b):
    lo = indptr[a]
    hi = indptr[a + 1]
    while lo < hi:
        mid = (lo + hi) >> 1
        x = indices[mid]
        if x == b:
            return True
        if x < b:
            lo = mid + 1
        else:
            hi = mid
    return False


@nb.njit(nogil=True, cache=True)
def _min_boundary_of_size(indptr, indices, deg, n, k):
    """Smallest boundary over k-subsets, with the lexicographically first minimiser."""
    c = np.arange(k)
    dsum = np.zeros(k, dtype=np.int64)  # degree sum of c[0..j]
    esum = np.zeros(k, dtype=np.int64)  # internal edges among c[0..j]
    best = np.int64(-1)
    arg = c.copy()
    start = 0
    while True:
        for j in range(start, k):
            x = c[j]
            internal = 0
            for l in range(j):
                if _adjacent(indptr, indices, c[l], x):
                    internal += 1
            dsum[j] = (dsum[j - 1] if j > 0 else 0) + deg[x]
            esum[j] = (esum[j - 1] if j > 0 else 0) + internal
        b = dsum[k - 1] - 2 * esum[k - 1]
        if best < 0 or b < best:
            best = b
            arg[:] = c
        i = k - 1
        while i >= 0 and c[i] == n - k + i:
            i -= 1
        if i < 0:
            break
        c[i] += 1
        for j in range(i + 1, k):
            c[j] = c[j - 1] + 1
        start = i
    return best, arg


def _normalise_range(n, size_range):
    lo, hi = size_range if size_range is not None else (1, n // 2)
    lo, hi = max(1, int(lo)), min(n, int(hi))
    if lo > hi:
        raise InvalidParamsError(f"empty size range {size_range} for a graph on {n} vertices")
    return lo, hi


def subset_count(n: int, lo: int, hi: int) -> int:
    return sum(math.comb(n, s) for s in range(lo, hi + 1))


def iso_exact(g: Graph, size_range=None, budget: int = DEFAULT_BUDGET) -> IsoResult:
    """Exact ``min boundary(S)/|S|`` over ``|S|`` in ``size_range`` (default [1, n/2])."""
    lo, hi = _normalise_range(g.n, size_range)
    total = subset_count(g.n, lo, hi)
    if total > budget:
        raise BudgetExceededError(
            f"{total} subsets of sizes {lo}..{hi} exceed the budget of {budget}"
        )
    indptr = np.ascontiguousarray(g.indptr)
    indices = np.ascontiguousarray(g.indices)
    deg = np.ascontiguousarray(g.degrees)
    best_r, best_w = None, None
    for s in range(lo, hi + 1):
        b, arg = _min_boundary_of_size(indptr, indices, deg, g.n, s)
        r, w = Fraction(int(b), s), arg.tolist()
        if _better(r, w, best_r, best_w):
            best_r, best_w = r, w
    return IsoResult(
        float(best_r), best_r, "exact", (lo, hi), VertexSet.from_ids(g.n, best_w),
        {"subsets": total},
    )


# ---------------------------------------------------------------------------
# spectral lower bound


def adjacency_matrix(g: Graph) -> csr_matrix:
    data = np.ones(g.indices.shape[0], dtype=np.float64)
    return csr_matrix((data, g.indices, g.indptr), shape=(g.n, g.n))


def second_eigenvalue(
    g: Graph, seed: int = 0, tol: float = 1e-8, max_iter: int = 100_000, patience: int = 10
) -> tuple[float, int]:
    """Largest adjacency eigenvalue on the complement of the all-ones vector.

    Power iteration on ``A + d I`` (spectrum shifted into [0, 2d], so the
    one-sided top eigenvalue dominates even for bipartite graphs), projecting
    out the uniform vector every step. Converged once the Rayleigh quotient
    moves less than ``tol`` for ``patience`` consecutive steps.
    """
    d = g.regular_degree()
    if d is None:
        raise NotRegularError("spectral bound needs a regular graph")
    a = adjacency_matrix(g)
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(g.n)
    x -= x.mean()
    x /= np.linalg.norm(x)
    prev = None
    calm = 0
    for it in range(1, max_iter + 1):
        ax = a @ x
        theta = float(x @ ax)
        y = ax + d * x
        y -= y.mean()
        norm = np.linalg.norm(y)
        if norm == 0.0:
            # x lies in the -d eigenspace, which then spans the whole complement
            return -float(d), it
        x = y / norm
        if prev is not None and abs(theta - prev) < tol:
            calm += 1
            if calm >= patience:
                return theta, it
        else:
            calm = 0
        prev = theta
    raise NoConvergenceError(f"power iteration did not settle within {max_iter} steps")


def iso_spectral_lower(g: Graph, seed: int = 0, tol: float = 1e-8) -> IsoResult:
    """Cheeger-type lower bound ``(d - lambda_2)/2`` for a connected d-regular graph."""
    d = g.regular_degree()
    if d is None:
        raise NotRegularError("spectral bound needs a regular graph")
    if not is_connected(g):
        raise NotConnectedError("spectral bound needs a connected graph")
    if g.n < 2:
        raise InvalidParamsError("spectral bound needs at least two vertices")
    lam, it = second_eigenvalue(g, seed=seed, tol=tol)
    return IsoResult(
        (d - lam) / 2.0, None, "spectral-lower", None, None, {"lambda2": lam, "iterations": it}
    )


# ---------------------------------------------------------------------------
# sampled upper bound


def _ratio_of(g: Graph, ids: np.ndarray):
    member = np.zeros(g.n, dtype=bool)
    member[ids] = True
    if 2 * ids.shape[0] > g.n:
        member = ~member
    size = int(member.sum())
    if size == 0:
        return None, None
    return Fraction(g.boundary_size(member), size), np.flatnonzero(member).tolist()


def _best_prefix(g: Graph, order: np.ndarray):
    """Best boundary/size over prefixes (size <= n/2) of a vertex ordering."""
    L = min(order.shape[0], g.n // 2)
    if L < 1:
        return None, None
    rank = np.full(g.n, g.n, dtype=np.int64)
    rank[order] = np.arange(order.shape[0])
    e = g.edges
    top = np.maximum(rank[e[:, 0]], rank[e[:, 1]])
    top = top[top < L]
    internal = np.cumsum(np.bincount(top, minlength=L))
    degsum = np.cumsum(g.degrees[order[:L]])
    bnd = degsum - 2 * internal
    sizes = np.arange(1, L + 1)
    # exact argmin of bnd/sizes via cross-multiplication against the float argmin
    j = int(np.argmin(bnd / sizes))
    r = Fraction(int(bnd[j]), j + 1)
    for k in range(L):
        rk = Fraction(int(bnd[k]), k + 1)
        if rk < r:
            r, j = rk, k
    return r, sorted(order[: j + 1].tolist())


def iso_sampled_upper(g: Graph, budget: int = 100, seed: int = 0, candidates=()) -> IsoResult:
    """Upper bound on i(G): best ratio over sampled sets.

    Odd trials draw a uniform random subset of random size in [1, n/2]; even
    trials grow a BFS ball from a random centre and score every prefix.
    ``candidates`` (e.g. the gadget blocks or classes) are always scored; a
    candidate larger than n/2 is replaced by its complement.
    """
    if budget < 1:
        raise InvalidParamsError("budget must be at least 1")
    if g.n < 2:
        raise InvalidParamsError("need at least two vertices")
    rng = np.random.default_rng(seed)
    adj = adjacency_matrix(g) if g.m else None
    best_r, best_w = None, None
    for c in candidates:
        r, w = _ratio_of(g, np.asarray(c, dtype=np.int64))
        if r is not None and _better(r, w, best_r, best_w):
            best_r, best_w = r, w
    for t in range(budget):
        if t % 2 == 0 and adj is not None:
            centre = int(rng.integers(g.n))
            order = breadth_first_order(adj, centre, directed=False, return_predecessors=False)
            r, w = _best_prefix(g, order)
        else:
            s = int(rng.integers(1, g.n // 2 + 1))
            r, w = _ratio_of(g, np.sort(rng.choice(g.n, size=s, replace=False)))
        if r is not None and _better(r, w, best_r, best_w):
            best_r, best_w = r, w
    return IsoResult(
        float(best_r), best_r, "sampled-upper", (1, g.n // 2), VertexSet.from_ids(g.n, best_w),
        {"trials": budget, "candidates": len(candidates)},
    )


# ---------------------------------------------------------------------------
# expansion core


@dataclass(frozen=True, eq=False)
class CoreExtractionResult:
    surviving: VertexSet
    removed_sets: list
    params: dict
    precondition_verified: bool

    @property
    def removed_count(self) -> int:
        return sum(len(b) for b in self.removed_sets)

    def core_graph(self, g: Graph) -> tuple[Graph, np.ndarray]:
        return induced_subgraph(g, self.surviving)


def _first_violating(adj, alive, limit, threshold):
    """Lexicographically first B (sorted member list) among alive vertices with
    1 <= |B| <= limit and boundary(B) < threshold * |B| in the alive subgraph."""
    verts = [v for v in range(len(adj)) if alive >> v & 1]
    deg = {v: (adj[v] & alive).bit_count() for v in verts}

    def dfs(start, members, mask, bnd):
        for idx in range(start, len(verts)):
            x = verts[idx]
            b = bnd + deg[x] - 2 * (adj[x] & mask).bit_count()
            sub = members + [x]
            if b < threshold * len(sub):
                return sub
            if len(sub) < limit:
                found = dfs(idx + 1, sub, mask | (1 << x), b)
                if found is not None:
                    return found
        return None

    return dfs(0, [], 0, 0) if limit >= 1 else None


def expansion_core(
    g: Graph, k: int, c1: float, c2: float, d: int | None = None, budget: int = DEFAULT_BUDGET
) -> CoreExtractionResult:
    """Strip sets B with |B| <= c3 k and boundary < c1 c2 d |B| until none remain.

    c3 = c1 (1 - c2) / 2 and ``d`` defaults to the maximum degree. Each round
    removes the lexicographically smallest violating set (boundary measured
    in what is left). When the input provably satisfies i_k(G) >= c1 d with
    max degree <= d (checked exhaustively), at most k vertices may go; more
    raises GuaranteeViolatedError.
    """
    if not (0 < c1 <= 1 and 0 < c2 <= 1):
        raise InvalidParamsError(f"need c1, c2 in (0, 1], got c1={c1}, c2={c2}")
    if d is None:
        d = g.max_degree
    if not c1 * d < k:
        raise InvalidParamsError(f"need c1*d < k, got c1*d={c1 * d}, k={k}")
    c3 = c1 * (1 - c2) / 2
    limit = math.floor(c3 * k + 1e-12)
    if subset_count(g.n, 1, min(limit, g.n)) > budget if limit >= 1 else False:
        raise BudgetExceededError(f"sets of size <= {limit} on {g.n} vertices exceed the budget")

    verified = False
    if g.n > k and g.max_degree <= d and math.comb(g.n, k) <= budget:
        # relative slack absorbs rounding when c1 was itself computed as i_k / d
        verified = float(iso_exact(g, (k, k), budget=budget).fraction) >= c1 * d * (1 - 1e-12)

    adj = [0] * g.n
    for u, v in g.edges.tolist():
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    alive = (1 << g.n) - 1
    threshold = c1 * c2 * d
    removed = []
    while True:
        b = _first_violating(adj, alive, limit, threshold)
        if b is None:
            break
        removed.append(VertexSet.from_ids(g.n, b))
        for v in b:
            alive &= ~(1 << v)

    params = {"k": k, "c1": c1, "c2": c2, "c3": c3, "d": d}
    surviving = VertexSet(np.array([bool(alive >> v & 1) for v in range(g.n)], dtype=bool))
    res = CoreExtractionResult(surviving, removed, params, verified)
    if verified and res.removed_count > k:
        raise GuaranteeViolatedError(
            f"removed {res.removed_count} > k={k} vertices although i_k(G) >= c1*d holds"
        )
    return res
