"""Command-line front end: ``percolab <gen|perc|census|survival|iso|experiment> ...``."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import formats
from .errors import PercolabError
from .exploration import census_sets, component_metrics
from .generators import GeneratorSpec, class_labels, generate, structured_sets
from .graph import components
from .harness import ExperimentConfig, run_experiment, write_report
from .isoperimetry import iso_exact, iso_sampled_upper, iso_spectral_lower
from .percolation import ROUNDS, percolate
from .theory import binomial_gw_survival, poisson_survival, series_F


def _number(text: str):
    try:
        return int(text)
    except ValueError:
        return float(text)


def parse_kv(text: str) -> dict:
    """``"n=10,d=3"`` -> ``{"n": 10, "d": 3}``."""
    out = {}
    for item in filter(None, (x.strip() for x in text.split(","))):
        key, sep, val = item.partition("=")
        if not sep:
            raise argparse.ArgumentTypeError(f"expected key=value, got {item!r}")
        out[key.strip()] = _number(val.strip())
    return out


def parse_range(text: str) -> tuple[float, float]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}")
    return _number(lo), _number(hi)


def _cmd_gen(a):
    spec = GeneratorSpec(a.model, a.params, a.seed)
    g = generate(spec)
    formats.write_edgelist(g, a.out)
    if a.emit_classes:
        labels = class_labels(spec)
        if labels is None:
            raise PercolabError("--emit-classes only applies to gadget-B")
        formats.write_classes(structured_sets(spec), a.emit_classes)
    return 0


def _cmd_perc(a):
    g = formats.read_edgelist(a.inp)
    formats.write_mask(percolate(g, a.p, a.seed, a.round).keep, a.out)
    return 0


def _cmd_census(a):
    g = formats.read_edgelist(a.inp)
    keep = formats.read_mask(a.mask, expected_m=g.m)
    cen = components(g, keep)
    out = component_metrics(cen, a.band)
    out = {k: out[k] for k in ("L1", "L2", "n_components")} | {"band_mass": out["band_mass"]}
    if a.delta is not None:
        out.update(census_sets(g, keep, a.delta).sizes())
    if a.json:
        print(json.dumps(out))
    else:
        for k, v in out.items():
            print(k, v)
    return 0


def _cmd_survival(a):
    if a.eps is not None:
        sol = poisson_survival(a.eps)
    elif a.binomial is not None:
        sol = binomial_gw_survival(a.binomial["d"], a.binomial["p"])
    else:
        sol = series_F(a.series["c"])
    print(f"value {sol.value:.15f}")
    print(f"residual {sol.residual:.15e}")
    return 0


def _cmd_iso(a):
    g = formats.read_edgelist(a.inp)
    if a.method == "exact":
        res = iso_exact(g, a.range, **({"budget": a.budget} if a.budget else {}))
    elif a.method == "spectral":
        res = iso_spectral_lower(g, seed=a.seed)
    else:
        res = iso_sampled_upper(g, a.budget or 100, a.seed)
    out = {
        "value": res.value,
        "fraction": None if res.fraction is None else str(res.fraction),
        "method": res.method,
        "witness": None if res.witness is None else res.witness.ids.tolist(),
    }
    print(json.dumps(out))
    return 0


def _cmd_experiment(a):
    cfg = ExperimentConfig.load(a.config)
    if a.regenerate_graph:
        cfg = dataclasses.replace(cfg, regenerate_graph=True)
    cfg = dataclasses.replace(cfg, output_path=None)
    summary = run_experiment(cfg, threads=a.threads)
    write_report(summary, a.out, a.format)
    for v in summary.verdicts:
        print(f"{'PASS' if v['passed'] else 'FAIL'} {v['name']}: measured {v['measured']!r}, "
              f"threshold {v['threshold']!r}")
    return 0 if summary.all_passed else 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="percolab", description="Bond percolation laboratory.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a host graph as an edge list")
    p.add_argument("--model", required=True)
    p.add_argument("--params", type=parse_kv, default={})
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--emit-classes", metavar="FILE")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("perc", help="percolate an edge list into a keep mask")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--round", choices=ROUNDS, default="single")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_perc)

    p = sub.add_parser("census", help="component census of a masked graph")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--mask", required=True)
    p.add_argument("--delta", type=float)
    p.add_argument("--band", type=parse_range, action="append", default=[],
                   help="inclusive size band lo..hi (repeatable)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("survival", help="survival probabilities and the series F")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--eps", type=float)
    g.add_argument("--binomial", type=parse_kv, help="d=..,p=..")
    g.add_argument("--series", type=parse_kv, help="c=..")
    p.set_defaults(func=_cmd_survival)

    p = sub.add_parser("iso", help="isoperimetric bounds")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--method", choices=("exact", "spectral", "sampled"), required=True)
    p.add_argument("--range", type=parse_range)
    p.add_argument("--budget", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("experiment", help="run an experiment config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--format", choices=("json-lines", "csv"))
    p.add_argument("--regenerate-graph", action="store_true")
    p.set_defaults(func=_cmd_experiment)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PercolabError, OSError, ValueError, KeyError) as exc:
        print(f"percolab {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
