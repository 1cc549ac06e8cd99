"""Seeded host-graph constructors.

All generators are pure functions of their arguments: the same parameters
and seed give a bit-identical canonical edge list.

Vertex layout of the two tightness constructions is fixed so that the
structured sets can be recovered from the parameters alone:

* gadget-A: block ``b`` occupies ids ``b*(d+2) .. b*(d+2)+d+1``; id
  ``b*(d+2)`` is the vertex of the sparse expander H_0 and the remaining
  ``d+1`` ids form its clique-minus-matching F_1.
* gadget-B: class ``j`` is ``j*(d1+1) .. (j+1)*(d1+1)-1``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DivisibilityViolationError,
    InvalidParamsError,
    ParityViolationError,
    RepairFailedError,
)
from .graph import CompleteGraph, Graph, build_graph

MODELS = ("complete", "bipartite", "hypercube", "random-regular", "gadget-A", "gadget-B")


@dataclass(frozen=True)
class GeneratorSpec:
    model: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.model not in MODELS:
            raise InvalidParamsError(f"unknown model {self.model!r}; choose from {MODELS}")
        if not 0 <= int(self.seed) < 2**64:
            raise InvalidParamsError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    def with_seed(self, seed: int) -> "GeneratorSpec":
        return GeneratorSpec(self.model, dict(self.params), seed)

    def to_dict(self) -> dict:
        return {"model": self.model, "params": dict(self.params), "seed": int(self.seed)}


# ---------------------------------------------------------------------------
# classic graphs


def complete_graph(n: int) -> CompleteGraph:
    if n < 1:
        raise InvalidParamsError(f"complete graph needs n >= 1, got {n}")
    return CompleteGraph(n)


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise InvalidParamsError(f"bipartite graph needs a, b >= 1, got a={a}, b={b}")
    u = np.repeat(np.arange(a), b)
    v = np.tile(np.arange(a, a + b), a)
    return build_graph(a + b, np.stack([u, v], axis=1))


def hypercube(d: int) -> Graph:
    if d < 1:
        raise InvalidParamsError(f"hypercube needs dimension d >= 1, got {d}")
    v = np.arange(1 << d, dtype=np.int64)
    parts = []
    for b in range(d):
        lo = v[(v >> b) & 1 == 0]
        parts.append(np.stack([lo, lo | (1 << b)], axis=1))
    return build_graph(1 << d, np.concatenate(parts))


def gen_classic(model: str, **params) -> Graph:
    """``complete`` (n), ``bipartite`` (a, b) or ``hypercube`` (d)."""
    try:
        if model == "complete":
            return complete_graph(int(params["n"]))
        if model == "bipartite":
            return complete_bipartite(int(params["a"]), int(params["b"]))
        if model == "hypercube":
            return hypercube(int(params["d"]))
    except KeyError as exc:
        raise InvalidParamsError(f"{model}: missing parameter {exc}") from None
    raise InvalidParamsError(f"{model!r} is not a classic model")


# ---------------------------------------------------------------------------
# configuration model


def _repair(n, pairs, rng, label, budget, stall):
    """Remove loops, multi-edges and same-label edges by random 2-edge switches.

    A switch replaces (a, b), (x, y) with (a, x), (b, y); degrees are kept.
    Returns ``(edges, attempts)``; ``edges`` is None when ``stall`` attempts
    in a row were rejected (small pairings can reach dead ends) or when the
    attempt budget ran out.
    """
    U = pairs[:, 0].tolist()
    V = pairs[:, 1].tolist()
    lab = label.tolist()
    m = len(U)

    def code(a, b):
        return a * n + b if a < b else b * n + a

    counts = Counter(code(a, b) for a, b in zip(U, V))

    def is_bad(i):
        a, b = U[i], V[i]
        return lab[a] == lab[b] or counts[code(a, b)] > 1

    pending = [i for i in range(m) if lab[U[i]] == lab[V[i]]]
    seen = set()
    for i in range(m):
        c = code(U[i], V[i])
        if counts[c] > 1:
            if c in seen:
                pending.append(i)
            seen.add(c)
    pending.sort(reverse=True)

    attempts = 0
    since_accept = 0
    while pending:
        i = pending[-1]
        if not is_bad(i):
            pending.pop()
            continue
        if attempts >= budget or since_accept >= stall:
            return None, attempts
        attempts += 1
        since_accept += 1
        j = int(rng.integers(m))
        if j == i:
            continue
        a, b = U[i], V[i]
        x, y = U[j], V[j]
        if rng.random() < 0.5:
            x, y = y, x
        if lab[a] == lab[x] or lab[b] == lab[y]:
            continue
        c1, c2 = code(a, x), code(b, y)
        if c1 == c2 or counts[c1] or counts[c2]:
            continue
        counts[code(a, b)] -= 1
        counts[code(U[j], V[j])] -= 1
        counts[c1] += 1
        counts[c2] += 1
        U[i], V[i] = a, x
        U[j], V[j] = b, y
        since_accept = 0
    edges = np.stack([np.asarray(U, dtype=np.int64), np.asarray(V, dtype=np.int64)], axis=1)
    return edges, attempts


def _configuration(n, d, rng, label=None):
    """Pair stubs, repair; re-pair on a dead end. At most 100*n switch attempts overall."""
    if label is None:
        label = np.arange(n, dtype=np.int64)
    budget = 100 * n
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    stall = max(50, 2 * stubs.size)
    while True:
        rng.shuffle(stubs)
        edges, used = _repair(n, stubs.reshape(-1, 2), rng, label, budget, stall)
        if edges is not None:
            return edges
        budget -= used
        if budget <= 0:
            raise RepairFailedError(
                f"configuration-model repair exhausted its budget of {100 * n} switches"
            )


def gen_random_regular(n: int, d: int, seed: int) -> Graph:
    """Simple d-regular graph on n vertices via configuration model + switch repair.

    Dense targets (2d > n-1) are built as the complement of an
    (n-1-d)-regular graph, where pairings rarely collide.
    """
    n, d = int(n), int(d)
    if n < 1 or d < 0:
        raise InvalidParamsError(f"need n >= 1 and d >= 0, got n={n}, d={d}")
    if (n * d) % 2:
        raise ParityViolationError(f"n*d must be even, got n={n}, d={d}")
    if d >= n:
        raise InvalidParamsError(f"need d < n, got n={n}, d={d}")
    if d == 0:
        return build_graph(n, [])
    if 2 * d > n - 1:
        sparse = gen_random_regular(n, n - 1 - d, seed)
        full = np.ones((n, n), dtype=bool)
        full[sparse.edges[:, 0], sparse.edges[:, 1]] = False
        u, v = np.nonzero(np.triu(full, k=1))
        return build_graph(n, np.stack([u, v], axis=1))
    rng = np.random.default_rng(int(seed))
    return build_graph(n, _configuration(n, d, rng))


# ---------------------------------------------------------------------------
# tightness constructions


def _check_gadget_a(d1, d, n):
    if min(d1, d, n) <= 0:
        raise InvalidParamsError(f"gadget-A needs positive d1, d, n; got {d1}, {d}, {n}")
    odd = [name for name, x in (("d1", d1), ("d", d), ("n", n)) if x % 2]
    if odd:
        raise ParityViolationError(f"gadget-A needs even d1, d, n; odd: {', '.join(odd)}")
    if n % (d + 2):
        raise DivisibilityViolationError(f"gadget-A needs d+2={d + 2} to divide n={n}")
    if d1 >= d:
        raise InvalidParamsError(f"gadget-A needs d1 < d, got d1={d1}, d={d}")
    if (d - d1) // 2 > (d + 1) // 2:
        raise InvalidParamsError("matching of size (d-d1)/2 does not fit in K_{d+1}")
    if d1 >= n // (d + 2):
        raise InvalidParamsError(
            f"H_0 would be {d1}-regular on {n // (d + 2)} vertices; need d1 < n/(d+2)"
        )


def gadget_a_blocks(d: int, n: int) -> list[np.ndarray]:
    """Sets {v} ∪ F_1(v), one per vertex of H_0, each of size d+2."""
    block = d + 2
    return [np.arange(b * block, (b + 1) * block) for b in range(n // block)]


def gadget_a_c_eff(d1: int, d: int) -> float:
    """The constant C for which d1 = d / (C e^2)."""
    return d / (math.e**2 * d1)


def gen_gadget_A(d1: int, d: int, n: int, seed: int) -> Graph:
    """Sparse expander H_0 with a (d+1)-clique minus a matching hung off each vertex."""
    d1, d, n = int(d1), int(d), int(n)
    _check_gadget_a(d1, d, n)
    block = d + 2
    h = n // block
    h0 = gen_random_regular(h, d1, seed)
    base = np.arange(h, dtype=np.int64) * block

    iu, iv = np.triu_indices(d + 1, k=1)
    msize = (d - d1) // 2
    # matching M(v) = (0,1), (2,3), ... in clique-local coordinates
    in_matching = (iv == iu + 1) & (iu % 2 == 0) & (iu < 2 * msize)
    local = np.stack([iu[~in_matching], iv[~in_matching]], axis=1) + 1
    clique = (base[:, None, None] + local[None, :, :]).reshape(-1, 2)

    matched = np.arange(2 * msize, dtype=np.int64) + 1
    hub = np.stack(
        [np.repeat(base, matched.size), (base[:, None] + matched[None, :]).ravel()], axis=1
    )
    core = base[h0.edges]
    return build_graph(n, np.concatenate([clique, hub, core]))


def _gadget_b_params(C, d, n):
    c1 = 3 * C
    C1 = int(round(c1))
    if abs(c1 - C1) > 1e-9 or C1 < 1:
        raise InvalidParamsError(f"gadget-B needs C1 = 3C to be a positive integer, got {c1}")
    d1 = int(d) - C1
    if d1 < 1:
        raise InvalidParamsError(f"gadget-B needs d1 = d - 3C >= 1, got {d1}")
    n = int(n)
    if n % (d1 + 1):
        raise DivisibilityViolationError(f"gadget-B needs d1+1={d1 + 1} to divide n={n}")
    t = n // (d1 + 1)
    if t < C1 + 1:
        raise InvalidParamsError(f"gadget-B needs t = n/(d1+1) >= C1+1 = {C1 + 1}, got t={t}")
    if (n * C1) % 2:
        raise ParityViolationError(f"gadget-B needs n*C1 even, got n={n}, C1={C1}")
    return C1, d1, t


def gadget_b_classes(C, d: int, n: int) -> list[np.ndarray]:
    """Colour classes A_1..A_t, each inducing K_{d1+1} in the construction."""
    _, d1, t = _gadget_b_params(C, d, n)
    size = d1 + 1
    return [np.arange(j * size, (j + 1) * size) for j in range(t)]


def gen_gadget_B(C, d: int, n: int, seed: int) -> Graph:
    """C1-regular graph H across t independent classes, each class completed to a clique."""
    C1, d1, t = _gadget_b_params(C, d, n)
    n = int(n)
    size = d1 + 1
    label = np.arange(n, dtype=np.int64) // size
    rng = np.random.default_rng(int(seed))
    h = _configuration(n, C1, rng, label)
    iu, iv = np.triu_indices(size, k=1)
    base = np.arange(t, dtype=np.int64) * size
    cliques = np.stack(
        [(base[:, None] + iu[None, :]).ravel(), (base[:, None] + iv[None, :]).ravel()], axis=1
    )
    return build_graph(n, np.concatenate([h, cliques]))


# ---------------------------------------------------------------------------
# dispatch


def generate(spec: GeneratorSpec) -> Graph:
    p = spec.params
    try:
        if spec.model in ("complete", "bipartite", "hypercube"):
            return gen_classic(spec.model, **p)
        if spec.model == "random-regular":
            return gen_random_regular(p["n"], p["d"], spec.seed)
        if spec.model == "gadget-A":
            return gen_gadget_A(p["d1"], p["d"], p["n"], spec.seed)
        if spec.model == "gadget-B":
            return gen_gadget_B(p["C"], p["d"], p["n"], spec.seed)
    except KeyError as exc:
        raise InvalidParamsError(f"{spec.model}: missing parameter {exc}") from None
    raise InvalidParamsError(f"unknown model {spec.model!r}")


def structured_sets(spec: GeneratorSpec) -> list[np.ndarray]:
    """Construction-specific candidate sets for the sampled isoperimetric bound."""
    p = spec.params
    if spec.model == "gadget-A":
        return gadget_a_blocks(int(p["d"]), int(p["n"]))
    if spec.model == "gadget-B":
        return gadget_b_classes(p["C"], int(p["d"]), int(p["n"]))
    return []


def class_labels(spec: GeneratorSpec) -> np.ndarray | None:
    """Per-vertex class index for gadget-B, else None."""
    if spec.model != "gadget-B":
        return None
    _, d1, _ = _gadget_b_params(spec.params["C"], spec.params["d"], spec.params["n"])
    return np.arange(int(spec.params["n"]), dtype=np.int64) // (d1 + 1)
