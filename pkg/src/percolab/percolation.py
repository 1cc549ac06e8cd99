"""Seeded bond percolation and the three-round exposure split."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import rng
from .errors import DuplicateRoundError, GraphMismatchError, InvalidProbabilityError
from .graph import Graph

ROUNDS = ("single", "round1", "round2", "round3", "union")
SCHEDULE_TOL = 1e-12


@dataclass(frozen=True)
class ExposureSchedule:
    """Split of p into rounds with (1-p1)(1-p2)(1-p3) = 1-p and p2 = p3 = delta/d."""

    p: float
    delta: float
    d: int
    p1: float
    p2: float
    p3: float

    @property
    def rho1(self) -> float:
        return self.p1

    @property
    def rho2(self) -> float:
        """Retention probability after two rounds."""
        return 1.0 - (1.0 - self.p1) * (1.0 - self.p2)

    @property
    def rho3(self) -> float:
        return self.p

    @property
    def epsilon(self) -> float:
        return self.p * self.d - 1.0

    def product_error(self) -> float:
        return abs((1.0 - self.p1) * (1.0 - self.p2) * (1.0 - self.p3) - (1.0 - self.p))

    def lower_bounds(self) -> dict:
        """The round-wise lower bounds p1 >= (1+eps-2delta)/d and rho2 >= (1+eps-delta)/d.

        Returned with whether each holds (to 1e-12) for this schedule.
        """
        eps, dl, d = self.epsilon, self.delta, self.d
        b1 = (1.0 + eps - 2.0 * dl) / d
        b2 = (1.0 + eps - dl) / d
        return {
            "p1_bound": b1,
            "p1_ok": self.p1 >= b1 - SCHEDULE_TOL,
            "rho2_bound": b2,
            "rho2_ok": self.rho2 >= b2 - SCHEDULE_TOL,
        }

    def as_rounds(self) -> tuple[tuple[str, float], ...]:
        return (("round1", self.p1), ("round2", self.p2), ("round3", self.p3))


def split_probability(p: float, delta: float, d: int) -> ExposureSchedule:
    """Three-round split of ``p`` with sprinkling rounds of probability ``delta/d``."""
    q = delta / d
    if not 0.0 <= q < 1.0:
        raise InvalidProbabilityError(f"delta/d must lie in [0, 1), got {q}")
    if not 0.0 < p <= 1.0:
        raise InvalidProbabilityError(f"p must lie in (0, 1], got {p}")
    # 1 - (1-p)/(1-q)^2 rearranged to avoid cancellation; exact p1 = p at q = 0
    p1 = (p - q * (2.0 - q)) / (1.0 - q) ** 2
    if not 0.0 <= p1 <= 1.0:
        raise InvalidProbabilityError(
            f"first-round probability {p1} outside [0, 1] for p={p}, delta/d={q}"
        )
    sched = ExposureSchedule(float(p), float(delta), int(d), p1, q, q)
    if sched.product_error() > SCHEDULE_TOL:
        raise InvalidProbabilityError(f"schedule product identity off by {sched.product_error()}")
    return sched


def schedule_from_epsilon(epsilon: float, d: int, delta: float | None = None) -> ExposureSchedule:
    """Schedule for p = (1+epsilon)/d; delta defaults to epsilon^2/10."""
    if delta is None:
        delta = epsilon**2 / 10.0
    return split_probability((1.0 + epsilon) / d, delta, d)


@dataclass(frozen=True, eq=False)
class PercolationSample:
    """Kept edges of one percolation draw.

    Stored as the sorted canonical indices of kept edges; ``keep`` gives the
    dense indicator.
    """

    graph: Graph
    kept: np.ndarray
    p: float
    seed: int
    round: str

    @property
    def keep(self) -> np.ndarray:
        mask = np.zeros(self.graph.m, dtype=bool)
        mask[self.kept] = True
        return mask

    @property
    def kept_count(self) -> int:
        return int(self.kept.shape[0])

    def relabel(self, round: str) -> "PercolationSample":
        return PercolationSample(self.graph, self.kept, self.p, self.seed, round)


def percolate(g: Graph, p: float, seed: int, round: str = "single") -> PercolationSample:
    """Keep edge i iff u_i < p, where u_i is the counter-based uniform for (seed, round, i)."""
    if not 0.0 <= p <= 1.0:
        raise InvalidProbabilityError(f"p must lie in [0, 1], got {p}")
    if round not in ROUNDS:
        raise ValueError(f"round label must be one of {ROUNDS}, got {round!r}")
    kept = rng.kept_indices(int(seed), round, g.m, float(p))
    kept.flags.writeable = False
    return PercolationSample(g, kept, float(p), int(seed), round)


def union_rounds(samples) -> PercolationSample:
    samples = list(samples)
    if not samples:
        raise ValueError("need at least one sample")
    g = samples[0].graph
    if any(s.graph is not g for s in samples):
        raise GraphMismatchError("samples come from different graphs")
    labels = [s.round for s in samples]
    dup = {x for x in labels if labels.count(x) > 1}
    if dup:
        raise DuplicateRoundError(f"round label(s) repeated: {sorted(dup)}")
    kept = reduce(np.union1d, (s.kept for s in samples)).astype(np.int64)
    kept.flags.writeable = False
    p = 1.0 - float(np.prod([1.0 - s.p for s in samples]))
    return PercolationSample(g, kept, p, samples[0].seed, "union")


def expose(g: Graph, schedule: ExposureSchedule, seed: int) -> dict[str, PercolationSample]:
    """Run the three rounds and return them with G(2) and G(3) unions.

    Keys: round1, round2, round3, G1, G2, G3.
    """
    r = {label: percolate(g, prob, seed, label) for label, prob in schedule.as_rounds()}
    g2 = union_rounds([r["round1"], r["round2"]])
    g3 = union_rounds([r["round1"], r["round2"], r["round3"]])
    return {**r, "G1": r["round1"], "G2": g2, "G3": g3}
