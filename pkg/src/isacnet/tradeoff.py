"""Power and bandwidth trade-off sweeps.

A budget is always spent in full: a fraction ``rho`` goes to sensing and
``1 - rho`` to communication.  Each grid point is evaluated independently,
with the analytic engine or the Monte-Carlo oracle.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .analytic import pc_analytic, pd_analytic
from .config import ScenarioConfig
from .montecarlo import mc_coverage, mc_detection

__all__ = ["Budget", "FrontierPoint", "Frontier", "allocate", "sweep", "mark_dominated",
           "pareto_filter"]

ENGINES = ("analytic", "montecarlo")


@dataclass(frozen=True)
class Budget:
    """``kind`` is ``"power"`` (total in W) or ``"bandwidth"`` (total in Hz)."""

    kind: str
    total: float
    steps: int = 101

    def __post_init__(self):
        if self.kind not in ("power", "bandwidth"):
            raise ValueError(f"budget kind must be 'power' or 'bandwidth', got {self.kind!r}")
        if not (math.isfinite(self.total) and self.total > 0):
            raise ValueError("budget total must be > 0")
        if not (isinstance(self.steps, int) and self.steps >= 2):
            raise ValueError("budget steps must be an integer >= 2")

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.steps)

    @classmethod
    def from_config(cls, kind: str, cfg: ScenarioConfig, steps: int | None = None) -> "Budget":
        total = cfg.tradeoff.p_t if kind == "power" else cfg.tradeoff.b_total
        return cls(kind, total, cfg.tradeoff.steps if steps is None else steps)


@dataclass(frozen=True)
class FrontierPoint:
    rho: float
    alloc_s: float
    alloc_c: float
    p_d: float
    p_c: float
    dominated: bool = False
    source: str = "analytic"
    error: str | None = None


@dataclass(frozen=True)
class Frontier:
    points: tuple
    scenario: ScenarioConfig
    budget: Budget

    def pareto(self) -> list:
        return pareto_filter(self.points)


def allocate(base: ScenarioConfig, budget: Budget, rho: float) -> ScenarioConfig:
    """Scenario with fraction ``rho`` of the budget given to sensing.

    Bandwidth changes propagate to both noise powers and both thresholds
    because everything is derived from the parameter objects.
    """
    share_s = rho * budget.total
    share_c = budget.total - share_s
    if budget.kind == "power":
        return replace(base, sensing=replace(base.sensing, p_s=share_s),
                       comm=replace(base.comm, p_c=share_c))
    return replace(base, sensing=replace(base.sensing, b_s=share_s),
                   comm=replace(base.comm, b_c=share_c))


def _evaluate(cfg, engine, n_trials):
    if engine == "analytic":
        pd = pd_analytic(cfg.sensing, cfg.geometry, cfg.constants, cfg.quadrature)
        pc = pc_analytic(cfg.comm, cfg.geometry, cfg.constants, cfg.quadrature)
        return pd.value, pc.value
    kw = dict(n_trials=n_trials, master_seed=cfg.mc.master_seed, poisson=cfg.mc.poisson_counts)
    pd = mc_detection(cfg.sensing, cfg.geometry, cfg.constants, **kw)
    pc = mc_coverage(cfg.comm, cfg.geometry, cfg.constants, **kw)
    return pd.p_hat, pc.p_hat


def sweep(budget: Budget, base: ScenarioConfig, engine: str = "analytic",
          n_trials: int | None = None, workers: int = 1) -> Frontier:
    """Evaluate both metrics on every allocation of ``budget``.

    A failing grid point is kept with NaN probabilities and its error
    message; the sweep carries on.
    """
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}, got {engine!r}")
    n_trials = base.mc.n_trials if n_trials is None else n_trials

    def point(rho):
        rho = float(rho)
        share_s = rho * budget.total
        share_c = budget.total - share_s
        try:
            pd, pc = _evaluate(allocate(base, budget, rho), engine, n_trials)
            err = None
        except (ArithmeticError, ValueError) as exc:
            pd = pc = math.nan
            err = f"{type(exc).__name__}: {exc}"
        return FrontierPoint(rho, share_s, share_c, pd, pc, source=engine, error=err)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            pts = list(pool.map(point, budget.grid))
    else:
        pts = [point(r) for r in budget.grid]
    return Frontier(tuple(mark_dominated(pts)), base, budget)


def _dominates(a, b):
    return a.p_d >= b.p_d and a.p_c >= b.p_c and (a.p_d > b.p_d or a.p_c > b.p_c)


def _valid(p):
    return not (math.isnan(p.p_d) or math.isnan(p.p_c))


def mark_dominated(points) -> list:
    """Same points, in order, with ``dominated`` set by pairwise comparison."""
    valid = [p for p in points if _valid(p)]
    return [replace(p, dominated=(not _valid(p)) or any(_dominates(o, p) for o in valid))
            for p in points]


def pareto_filter(points) -> list:
    """Non-dominated points ordered by ascending ``p_d``."""
    keep = [p for p in mark_dominated(points) if not p.dominated]
    return sorted(keep, key=lambda p: (p.p_d, p.p_c, p.rho))
