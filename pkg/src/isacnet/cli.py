"""Command-line front end.

    isacnet analytic --config fig3-assumed --sweep p_s:0:30:31
    isacnet mc       --config table1-defaults --sweep d:5:50:10 --trials 100000 --seed 7
    isacnet tradeoff --config fig5-assumed --budget bandwidth --engine analytic
    isacnet validate --config table1-defaults --sweep n:10:50:5

Results are CSV on stdout (or ``--out``).  Exit codes: 0 ok, 2 config
error, 3 numeric failure, 4 validation failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import replace

import numpy as np

from .analytic import QuadratureError, pc_analytic, pd_analytic
from .config import (
    COMM_PARAMS,
    SENSING_PARAMS,
    ConfigError,
    MonteCarloSettings,
    canonical_param,
    load_config,
    with_param,
)
from .montecarlo import mc_coverage, mc_detection
from .tradeoff import Budget, sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_VALIDATION = 4

ANALYTIC_HEADER = ("param", "value", "{p}", "est_error")
MC_HEADER = ("param", "value", "p_hat", "ci_low", "ci_high", "n_trials")
FRONTIER_HEADER = ("rho", "p_s_or_b_s", "p_c_or_b_c", "p_d", "p_c", "dominated")
VALIDATE_HEADER = ("param", "value", "metric", "analytic", "p_hat", "std_err", "z_score",
                   "within_3sigma")


class _Fail(Exception):
    def __init__(self, code, msg):
        super().__init__(msg)
        self.code = code


def parse_sweep(spec: str | None):
    """``param:start:stop:steps`` -> (canonical name, grid).  None -> base point."""
    if not spec:
        return None, [None]
    parts = spec.split(":")
    if len(parts) != 4:
        raise ConfigError(f"--sweep must look like param:start:stop:steps, got {spec!r}")
    name = canonical_param(parts[0])
    try:
        start, stop = float(parts[1]), float(parts[2])
        steps = int(parts[3])
    except ValueError as exc:
        raise ConfigError(f"--sweep {spec!r}: {exc}") from exc
    if steps < 1:
        raise ConfigError("--sweep steps must be >= 1")
    grid = np.linspace(start, stop, steps).tolist()
    if name in ("n_interferers", "m_transmitters"):
        if any(v != round(v) for v in grid):
            raise ConfigError(f"--sweep {name}: grid {grid} is not integer-valued")
        grid = [int(round(v)) for v in grid]
    return name, grid


def _metric(args, param):
    if args.metric != "auto":
        return args.metric
    return "coverage" if param in COMM_PARAMS else "detection"


def _points(cfg, param, grid):
    for v in grid:
        yield ("base" if param is None else param), ("" if v is None else v), \
            (cfg if v is None else with_param(cfg, param, v))


def _load(args):
    cfg = load_config(args.config)
    seed, trials = getattr(args, "seed", None), getattr(args, "trials", None)
    try:
        mc = MonteCarloSettings(cfg.mc.master_seed if seed is None else seed,
                                cfg.mc.n_trials if trials is None else trials,
                                cfg.mc.poisson_counts)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return replace(cfg, mc=mc)


def _analytic_one(cfg, metric):
    if metric == "detection":
        return pd_analytic(cfg.sensing, cfg.geometry, cfg.constants, cfg.quadrature)
    return pc_analytic(cfg.comm, cfg.geometry, cfg.constants, cfg.quadrature)


def _mc_one(cfg, metric, workers):
    fn = mc_detection if metric == "detection" else mc_coverage
    params = cfg.sensing if metric == "detection" else cfg.comm
    return fn(params, cfg.geometry, cfg.constants, n_trials=cfg.mc.n_trials,
              master_seed=cfg.mc.master_seed, workers=workers, poisson=cfg.mc.poisson_counts)


def cmd_analytic(args, out):
    cfg = _load(args)
    param, grid = parse_sweep(args.sweep)
    metric = _metric(args, param)
    w = csv.writer(out, lineterminator="\n")
    w.writerow([h.format(p="p_d" if metric == "detection" else "p_c") for h in ANALYTIC_HEADER])
    bad = False
    for name, value, point in _points(cfg, param, grid):
        res = _analytic_one(point, metric)
        bad |= not res.converged
        w.writerow([name, value, res.value, res.est_error])
    if bad:
        raise _Fail(EXIT_NUMERIC, "quadrature did not converge at one or more grid points")


def cmd_mc(args, out):
    cfg = _load(args)
    param, grid = parse_sweep(args.sweep)
    metric = _metric(args, param)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(MC_HEADER)
    for name, value, point in _points(cfg, param, grid):
        est = _mc_one(point, metric, args.workers)
        w.writerow([name, value, est.p_hat, est.ci_low, est.ci_high, est.n_trials])


def cmd_tradeoff(args, out):
    cfg = _load(args)
    try:
        budget = Budget.from_config(args.budget, cfg, args.steps)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    engine = "montecarlo" if args.engine == "mc" else "analytic"
    frontier = sweep(budget, cfg, engine=engine, workers=args.workers)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(FRONTIER_HEADER)
    for p in frontier.points:
        w.writerow([p.rho, p.alloc_s, p.alloc_c, p.p_d, p.p_c, "true" if p.dominated else "false"])
    failed = [p for p in frontier.points if p.error]
    if failed:
        raise _Fail(EXIT_NUMERIC, "; ".join(f"rho={p.rho}: {p.error}" for p in failed))


def cmd_validate(args, out):
    cfg = _load(args)
    param, grid = parse_sweep(args.sweep)
    if args.metric == "auto":
        metrics = ("detection", "coverage")
    else:
        metrics = (args.metric,)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(VALIDATE_HEADER)
    worst = 0.0
    offenders = []
    for name, value, point in _points(cfg, param, grid):
        for metric in metrics:
            if param is not None and param in (COMM_PARAMS if metric == "detection" else SENSING_PARAMS):
                continue  # parameter does not enter this metric
            res = _analytic_one(point, metric)
            est = _mc_one(point, metric, args.workers)
            delta = abs(res.value - est.p_hat)
            z = 0.0 if delta == 0 else delta / est.std_err
            ok = z <= 3.0
            worst = max(worst, z)
            if not ok:
                offenders.append(f"{name}={value} {metric}: analytic={res.value:.6g} "
                                 f"mc={est.p_hat:.6g} z={z:.2f}")
            w.writerow([name, value, metric, res.value, est.p_hat, est.std_err, z,
                        "true" if ok else "false"])
    print(f"validate: max |analytic - mc| / std_err = {worst:.3f} "
          f"({'PASS' if not offenders else 'FAIL'})", file=sys.stderr)
    if offenders:
        raise _Fail(EXIT_VALIDATION, "points beyond 3 sigma:\n  " + "\n  ".join(offenders))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isacnet", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mc=True):
        p.add_argument("--config", required=True,
                       help="scenario JSON path or shipped fixture name")
        p.add_argument("--out", default="-", help="output CSV path (default: stdout)")
        if mc:
            p.add_argument("--trials", type=int, help="Monte-Carlo trials per point")
            p.add_argument("--seed", type=int, help="64-bit master seed")
            p.add_argument("--workers", type=int, default=1,
                           help="threads for Monte-Carlo evaluation (results do not depend on it)")

    p = sub.add_parser("analytic", help="closed-form probabilities over a 1-D grid")
    common(p, mc=False)
    p.add_argument("--sweep", help="param:start:stop:steps")
    p.add_argument("--metric", choices=("auto", "detection", "coverage"), default="auto")
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("mc", help="Monte-Carlo estimates with Wilson intervals")
    common(p)
    p.add_argument("--sweep", help="param:start:stop:steps")
    p.add_argument("--metric", choices=("auto", "detection", "coverage"), default="auto")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("tradeoff", help="power or bandwidth budget frontier")
    common(p)
    p.add_argument("--budget", choices=("power", "bandwidth"), required=True)
    p.add_argument("--engine", choices=("analytic", "mc"), default="analytic")
    p.add_argument("--steps", type=int, help="grid size for the allocation fraction")
    p.set_defaults(func=cmd_tradeoff)

    p = sub.add_parser("validate", help="check analytic values against Monte Carlo (3 sigma)")
    common(p)
    p.add_argument("--sweep", help="param:start:stop:steps")
    p.add_argument("--metric", choices=("auto", "detection", "coverage"), default="auto")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    buf = io.StringIO()
    code = EXIT_OK
    try:
        args.func(args, buf)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except QuadratureError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        code = EXIT_NUMERIC
    except _Fail as exc:
        print(str(exc), file=sys.stderr)
        code = exc.code
    text = buf.getvalue()
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
