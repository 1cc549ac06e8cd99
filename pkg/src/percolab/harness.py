"""Declarative experiment runner: host graph, trial battery, aggregates, verdicts.

Per-trial record fields, in report order::

    trial, seed, L1, L2, n_components,
    band_mass_0 .. band_mass_{B-1}      (one per configured band)
    n_ge_<s>                            (one per configured count threshold)
    vs, vl, wl                          (when a census delta is configured)
    isolated_classes                    (gadget-B hosts only)

Wall-clock runtimes are kept on the summary but never written, so reports
are byte-identical across runs and thread counts.
"""

from __future__ import annotations

import csv
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InvalidParamsError,
    InvalidProbabilityError,
    OutputUnwritableError,
    UnknownMetricError,
    UnknownPredicateError,
)
from .exploration import band_mass, census_sets
from .formats import ensure_parent
from .generators import GeneratorSpec, class_labels, generate
from .graph import Graph, components
from .percolation import expose, percolate, split_probability
from .theory import binomial_gw_survival, poisson_survival

EXPOSURES = ("single", "three-round")
PREDICATE_KINDS = ("giant-band", "second-small", "all-small", "giant-at-least", "count-band")
QUANTILES = (0.05, 0.25, 0.5, 0.75, 0.95)
# fraction-of-trials defaults: concentration-style checks vs. the delicate lower-order one
Q_DEFAULT = 0.95
Q_DELICATE = 0.60
THREADS_ENV = "PERCOLAB_THREADS"


@dataclass(frozen=True)
class ExperimentConfig:
    generator: GeneratorSpec
    p: float | None = None
    epsilon: float | None = None
    delta: float | None = None
    trials: int = 1
    base_seed: int = 0
    predicates: tuple = ()
    output_path: str | None = None
    bands: tuple = ()
    count_thresholds: tuple = ()
    exposure: str = "single"
    census: bool = False
    regenerate_graph: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise InvalidParamsError(f"trials must be >= 1, got {self.trials}")
        if (self.p is None) == (self.epsilon is None):
            raise InvalidParamsError("give exactly one of p and epsilon")
        if self.p is not None and not 0.0 <= self.p <= 1.0:
            raise InvalidProbabilityError(f"p must lie in [0, 1], got {self.p}")
        if self.exposure not in EXPOSURES:
            raise InvalidParamsError(f"exposure must be one of {EXPOSURES}")
        if not 0 <= self.base_seed < 2**64 - self.trials:
            raise InvalidParamsError("base_seed + trial index must stay a 64-bit unsigned integer")

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        doc = dict(doc)
        gen = doc.pop("generator")
        if not isinstance(gen, GeneratorSpec):
            gen = GeneratorSpec(gen["model"], dict(gen.get("params", {})), int(gen.get("seed", 0)))
        doc["predicates"] = tuple(dict(x) for x in doc.get("predicates", ()))
        doc["bands"] = tuple(tuple(b) for b in doc.get("bands", ()))
        doc["count_thresholds"] = tuple(doc.get("count_thresholds", ()))
        unknown = set(doc) - set(cls.__dataclass_fields__)
        if unknown:
            raise InvalidParamsError(f"unknown config field(s): {sorted(unknown)}")
        return cls(generator=gen, **doc)

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return {
            "generator": self.generator.to_dict(),
            "p": self.p,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "trials": self.trials,
            "base_seed": self.base_seed,
            "predicates": [dict(x) for x in self.predicates],
            "output_path": self.output_path,
            "bands": [list(b) for b in self.bands],
            "count_thresholds": list(self.count_thresholds),
            "exposure": self.exposure,
            "census": self.census,
            "regenerate_graph": self.regenerate_graph,
        }


def host_degree(g: Graph) -> int:
    d = g.regular_degree()
    return g.max_degree if d is None else d


def resolve_probability(cfg: ExperimentConfig, d: int) -> tuple[float, float]:
    """(p, epsilon) for a host of degree d."""
    if cfg.p is not None:
        return cfg.p, cfg.p * d - 1.0
    p = (1.0 + cfg.epsilon) / d
    if not 0.0 <= p <= 1.0:
        raise InvalidProbabilityError(f"(1+epsilon)/d = {p} outside [0, 1]")
    return p, cfg.epsilon


def resolve_delta(cfg: ExperimentConfig, eps: float) -> float:
    return cfg.delta if cfg.delta is not None else eps**2 / 10.0


@dataclass
class ExperimentSummary:
    config: ExperimentConfig
    n: int
    d: int
    p: float
    epsilon: float
    records: list
    aggregates: dict
    verdicts: list = field(default_factory=list)
    runtimes: list = field(default_factory=list)

    @property
    def metric_names(self) -> list[str]:
        return [k for k in self.records[0] if k not in ("trial", "seed")]

    def metric(self, name: str) -> np.ndarray:
        if not self.records or name not in self.records[0] or name in ("trial", "seed"):
            raise UnknownMetricError(f"no per-trial metric {name!r}")
        return np.array([r[name] for r in self.records])

    @property
    def all_passed(self) -> bool:
        return all(v["passed"] for v in self.verdicts)


# ---------------------------------------------------------------------------
# trials


def _isolated_classes(g: Graph, kept: np.ndarray, labels: np.ndarray) -> int:
    """Classes with no kept edge leaving them."""
    u, v = g.endpoints(kept)
    cu, cv = labels[u], labels[v]
    cross = cu != cv
    touched = np.zeros(int(labels.max()) + 1, dtype=bool)
    touched[cu[cross]] = True
    touched[cv[cross]] = True
    return int((~touched).sum())


def run_trial(cfg: ExperimentConfig, g: Graph, index: int, labels=None) -> tuple[dict, float]:
    """Metrics of trial ``index``; a pure function of (graph, base_seed + index)."""
    t0 = time.perf_counter()
    seed = cfg.base_seed + index
    d = host_degree(g)
    p, eps = resolve_probability(cfg, d)
    if cfg.exposure == "single":
        sample = percolate(g, p, seed)
    else:
        sample = expose(g, split_probability(p, resolve_delta(cfg, eps), d), seed)["G3"]
    cen = components(g, sample)
    rec = {"trial": index, "seed": seed, "L1": cen.L1, "L2": cen.L2, "n_components": cen.count}
    for i, (lo, hi) in enumerate(cfg.bands):
        rec[f"band_mass_{i}"] = band_mass(cen, lo, hi)
    for s in cfg.count_thresholds:
        rec[f"n_ge_{s}"] = int((cen.sizes >= s).sum())
    if cfg.census:
        sc = census_sets(g, sample, resolve_delta(cfg, eps))
        rec.update(sc.sizes())
    if labels is not None:
        rec["isolated_classes"] = _isolated_classes(g, sample.kept, labels)
    return rec, time.perf_counter() - t0


def _thread_count(threads: int | None) -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        threads = int(env)
    return max(1, int(threads or 1))


def aggregate(records: list) -> dict:
    """mean, sample std (0 for a single trial), min, max and quantiles per metric."""
    out = {}
    for name in records[0]:
        if name in ("trial", "seed"):
            continue
        x = np.array([r[name] for r in records], dtype=np.float64)
        qs = np.quantile(x, QUANTILES)
        out[name] = {
            "mean": float(x.mean()),
            "std": float(x.std(ddof=1)) if x.shape[0] > 1 else 0.0,
            "min": float(x.min()),
            "max": float(x.max()),
            **{f"q{int(round(q * 100)):02d}": float(v) for q, v in zip(QUANTILES, qs)},
        }
    return out


def run_experiment(cfg: ExperimentConfig, threads: int | None = None, graph: Graph | None = None):
    """Run the battery; the host graph is built once from ``base_seed`` unless
    ``regenerate_graph`` asks for a fresh host per trial seed. Predicates are
    evaluated and, if ``output_path`` is set, the report is written."""
    spec = cfg.generator.with_seed(cfg.base_seed)
    labels = class_labels(spec)
    if graph is None and not cfg.regenerate_graph:
        graph = generate(spec)

    def one(i):
        g = graph if graph is not None else generate(spec.with_seed(cfg.base_seed + i))
        rec, rt = run_trial(cfg, g, i, labels)
        return rec, rt, g.n, host_degree(g)

    workers = _thread_count(threads)
    if workers == 1:
        results = [one(i) for i in range(cfg.trials)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, range(cfg.trials)))
    records = [r[0] for r in results]
    n, d = results[0][2], results[0][3]
    p, eps = resolve_probability(cfg, d)
    summary = ExperimentSummary(cfg, n, d, p, eps, records, aggregate(records),
                                runtimes=[r[1] for r in results])
    summary.verdicts = evaluate_predicates(summary, cfg.predicates)
    if cfg.output_path:
        write_report(summary, cfg.output_path)
    return summary


# ---------------------------------------------------------------------------
# predicates


def _target_y(spec: dict, summary: ExperimentSummary) -> float:
    y = spec.get("y", "binomial")
    if y == "poisson":
        return poisson_survival(summary.epsilon).value
    if y == "binomial":
        return binomial_gw_survival(summary.d, summary.p).value
    return float(y)


def evaluate_predicates(summary: ExperimentSummary, predicates) -> list[dict]:
    """One verdict per predicate: name, kind, passed, measured, threshold.

    Fraction-style kinds report the fraction of trials meeting ``bound`` as
    ``measured`` plus the worst (smallness) or best (giant-at-least) trial
    value as ``extreme``.
    """
    verdicts = []
    for spec in predicates:
        kind = spec.get("kind")
        name = spec.get("name", kind)
        if kind == "giant-band":
            x = summary.metric(spec.get("metric", "L1"))
            y, t = _target_y(spec, summary), float(spec["t"])
            measured = float(x.mean()) / summary.n
            lo, hi = y - t, y + t
            v = {"measured": measured, "threshold": [lo, hi], "passed": lo <= measured <= hi}
        elif kind in ("second-small", "all-small", "giant-at-least"):
            default_metric = "L2" if kind == "second-small" else "L1"
            x = summary.metric(spec.get("metric", default_metric))
            bound, q = float(spec["bound"]), float(spec.get("q", Q_DEFAULT))
            ok = x >= bound if kind == "giant-at-least" else x <= bound
            frac = float(ok.mean())
            v = {"measured": frac, "threshold": q, "bound": bound,
                 "extreme": float(x.max()), "passed": frac >= q}
        elif kind == "count-band":
            if "metric" not in spec:
                raise UnknownMetricError("count-band needs a metric")
            x = summary.metric(spec["metric"])
            lo, hi = float(spec["lo"]), float(spec["hi"])
            measured = float(x.mean())
            v = {"measured": measured, "threshold": [lo, hi], "passed": lo <= measured <= hi}
        else:
            raise UnknownPredicateError(f"unknown predicate kind {kind!r}; choose from {PREDICATE_KINDS}")
        verdicts.append({"name": name, "kind": kind, **v})
    return verdicts


# ---------------------------------------------------------------------------
# reports


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), allow_nan=False)


def write_report(summary: ExperimentSummary, path, fmt: str | None = None) -> None:
    """json-lines (default; trial lines then one ``"aggregate": true`` line) or csv."""
    fmt = fmt or ("csv" if str(path).endswith(".csv") else "json-lines")
    try:
        ensure_parent(path)
        fh = open(path, "w", newline="")
    except OSError as exc:
        raise OutputUnwritableError(f"cannot write report {path}: {exc}") from exc
    with fh:
        if fmt == "csv":
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(list(summary.records[0]))
            for r in summary.records:
                w.writerow([repr(x) if isinstance(x, float) else x for x in r.values()])
        elif fmt == "json-lines":
            for r in summary.records:
                fh.write(_dumps(r) + "\n")
            tail = {
                "aggregate": True,
                "trials": len(summary.records),
                "n": summary.n,
                "d": summary.d,
                "p": summary.p,
                "metrics": summary.aggregates,
                "verdicts": summary.verdicts,
            }
            fh.write(_dumps(tail) + "\n")
        else:
            raise ValueError(f"unknown report format {fmt!r}")


def read_report(path) -> tuple[list, dict]:
    """Trial records and the aggregate object of a json-lines report."""
    records, tail = [], None
    with open(path) as fh:
        for line in fh:
            obj = json.loads(line)
            if obj.get("aggregate") is True:
                tail = obj
            else:
                records.append(obj)
    return records, tail

