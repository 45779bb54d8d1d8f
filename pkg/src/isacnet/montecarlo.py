"""Monte-Carlo oracle for the detection and coverage probabilities.

Each realisation places a fixed number of nodes uniformly in the disk
(no exclusion zone), draws unit-mean Rayleigh power fading per link and a
Swerling-1 cross-section for the target, then tests the SINR against the
derived threshold.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy import stats

from .model import (
    CommParams,
    Geometry,
    SensingParams,
    capacity,
    derive_comm,
    derive_sensing,
    echo_power,
    radar_rate,
)
from .rng import RngStream, trial_uniforms
from .units import PhysicalConstants

__all__ = [
    "DETECTION_TAG",
    "COVERAGE_TAG",
    "Z95",
    "TrialOutcome",
    "McEstimate",
    "wilson_interval",
    "disk_distance",
    "exponential",
    "sample_disk_distance",
    "sample_exponential",
    "detection_width",
    "coverage_width",
    "detection_block",
    "coverage_block",
    "detection_trial",
    "coverage_trial",
    "estimate",
    "mc_detection",
    "mc_coverage",
]

DETECTION_TAG = 1
COVERAGE_TAG = 2
Z95 = float(stats.norm.ppf(0.975))
DEFAULT_BLOCK = 8192
# Poisson-count mode reserves draws for counts up to this tail quantile.
_POISSON_TAIL = 1e-12


@dataclass(frozen=True)
class TrialOutcome:
    sinr: float
    rate: float
    success: bool


@dataclass(frozen=True)
class McEstimate:
    """Binomial estimate with a Wilson 95% interval.

    ``std_err`` is the Wilson half-width divided by z, which stays positive
    at ``p_hat`` of 0 or 1.
    """

    p_hat: float
    n_trials: int
    successes: int
    ci_low: float
    ci_high: float
    std_err: float

    @classmethod
    def from_counts(cls, successes: int, n_trials: int, z: float = Z95) -> "McEstimate":
        lo, hi = wilson_interval(successes, n_trials, z)
        return cls(successes / n_trials, n_trials, successes, lo, hi, (hi - lo) / (2.0 * z))

    @property
    def center(self) -> float:
        return 0.5 * (self.ci_low + self.ci_high)


def wilson_interval(successes: int, n: int, z: float = Z95) -> tuple[float, float]:
    if n < 1:
        raise ValueError("n_trials must be >= 1")
    if not 0 <= successes <= n:
        raise ValueError("successes must lie in [0, n_trials]")
    p = successes / n
    z2 = z * z
    denom = 1.0 + z2 / n
    center = (p + z2 / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == n else min(1.0, center + half)
    return lo, hi


# -- inverse-CDF transforms -------------------------------------------------

def disk_distance(u, radius: float):
    """Distance from the centre of a disk for uniform ``u`` in (0, 1];
    density ``2l/R^2``."""
    return radius * np.sqrt(u)


def exponential(u, mean: float = 1.0):
    """Exponential variate with the given mean for ``u`` in (0, 1]."""
    return -mean * np.log(u)


def sample_disk_distance(rng: RngStream, radius: float, size: int | None = None):
    return disk_distance(rng.uniform(size), radius)


def sample_exponential(rng: RngStream, mean: float = 1.0, size: int | None = None):
    return exponential(rng.uniform(size), mean)


# -- trial layouts ----------------------------------------------------------

def _max_count(expected: int, poisson: bool) -> int:
    if not poisson:
        return expected
    if expected == 0:
        return 0
    return int(stats.poisson.isf(_POISSON_TAIL, expected)) + 1


def detection_width(sp: SensingParams, poisson: bool = False) -> int:
    """Uniforms per detection trial: RCS, [count], then distance and fading per interferer."""
    return 1 + int(poisson) + 2 * _max_count(sp.n_interferers, poisson)


def coverage_width(cp: CommParams, poisson: bool = False) -> int:
    """Uniforms per coverage trial: desired distance and fading, [count], interferers."""
    return 2 + int(poisson) + 2 * _max_count(cp.m_transmitters - 1, poisson)


def _active_mask(u_count, expected, slots):
    counts = stats.poisson.ppf(u_count, expected).astype(np.int64)
    return np.arange(slots)[None, :] < counts[:, None]


def _detection_sinr(sp, geo, ds, u, poisson):
    col = 0
    sigma = exponential(u[:, col], sp.sigma_bar)
    col += 1
    slots = (u.shape[1] - 1 - int(poisson)) // 2
    if poisson:
        mask = _active_mask(u[:, col], sp.n_interferers, slots)
        col += 1
    l = disk_distance(u[:, col:col + slots], geo.radius_r)
    h = exponential(u[:, col + slots:col + 2 * slots])
    gains = h * l ** (-sp.alpha)
    if poisson:
        gains = np.where(mask, gains, 0.0)
    interference = ds.a_e * ds.s_dens * gains.sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        return echo_power(sp, sigma) / (interference + ds.n0)


def _coverage_sinr(cp, geo, dc, u, poisson):
    slots = (u.shape[1] - 2 - int(poisson)) // 2
    r0 = disk_distance(u[:, 0], geo.radius_r)
    h0 = exponential(u[:, 1])
    col = 2
    if poisson:
        mask = _active_mask(u[:, col], cp.m_transmitters - 1, slots)
        col += 1
    r = disk_distance(u[:, col:col + slots], geo.radius_r)
    h = exponential(u[:, col + slots:col + 2 * slots])
    gains = h * r ** (-cp.alpha)
    if poisson:
        gains = np.where(mask, gains, 0.0)
    link = cp.p_c * cp.g_t * cp.g_r
    with np.errstate(divide="ignore", invalid="ignore"):
        return link * h0 * r0 ** (-cp.alpha) / (dc.n_c + link * gains.sum(axis=1))


def _passes(sinr, threshold):
    # a zero rate threshold is met by every realisation (matches the closed form)
    if threshold == 0:
        return np.ones(sinr.shape, dtype=bool)
    return sinr > threshold


def detection_block(sp: SensingParams, geo: Geometry, consts: PhysicalConstants,
                    master_seed: int, start: int, stop: int, poisson: bool = False):
    """SINR and success flags for detection trials ``start..stop-1``.

    Returns ``(sinr, success_by_sinr, success_by_rate)``.
    """
    ds = derive_sensing(sp, consts)
    u = trial_uniforms(master_seed, DETECTION_TAG, start, stop, detection_width(sp, poisson))
    sinr = _detection_sinr(sp, geo, ds, u, poisson)
    by_sinr = _passes(sinr, ds.gamma_s)
    by_rate = _passes(radar_rate(np.nan_to_num(sinr, nan=0.0), sp), sp.zeta_s)
    return sinr, by_sinr, by_rate


def coverage_block(cp: CommParams, geo: Geometry, consts: PhysicalConstants,
                   master_seed: int, start: int, stop: int, poisson: bool = False):
    """SINR and success flags for coverage trials ``start..stop-1``."""
    dc = derive_comm(cp, consts)
    u = trial_uniforms(master_seed, COVERAGE_TAG, start, stop, coverage_width(cp, poisson))
    sinr = _coverage_sinr(cp, geo, dc, u, poisson)
    by_sinr = _passes(sinr, dc.gamma_c)
    by_rate = _passes(capacity(np.nan_to_num(sinr, nan=0.0), cp), cp.zeta_c)
    return sinr, by_sinr, by_rate


def detection_trial(sp: SensingParams, geo: Geometry, consts: PhysicalConstants,
                    rng: RngStream) -> TrialOutcome:
    """One detection realisation drawn from a single trial stream."""
    ds = derive_sensing(sp, consts)
    u = rng.uniform(detection_width(sp))[None, :]
    sinr = float(_detection_sinr(sp, geo, ds, u, False)[0])
    rate = radar_rate(0.0 if math.isnan(sinr) else sinr, sp)
    return TrialOutcome(sinr, rate, bool(_passes(np.array([sinr]), ds.gamma_s)[0]))


def coverage_trial(cp: CommParams, geo: Geometry, consts: PhysicalConstants,
                   rng: RngStream) -> TrialOutcome:
    dc = derive_comm(cp, consts)
    u = rng.uniform(coverage_width(cp))[None, :]
    sinr = float(_coverage_sinr(cp, geo, dc, u, False)[0])
    rate = capacity(0.0 if math.isnan(sinr) else sinr, cp)
    return TrialOutcome(sinr, rate, bool(_passes(np.array([sinr]), dc.gamma_c)[0]))


def estimate(trials: Iterable, n_trials: int) -> McEstimate:
    """Aggregate the first ``n_trials`` outcomes (TrialOutcome or bool)."""
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    successes = 0
    seen = 0
    for outcome in trials:
        successes += bool(getattr(outcome, "success", outcome))
        seen += 1
        if seen == n_trials:
            break
    if seen < n_trials:
        raise ValueError(f"trial source ended after {seen} of {n_trials} trials")
    return McEstimate.from_counts(successes, n_trials)


def _run(block_fn, n_trials, workers, block):
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    bounds = [(s, min(s + block, n_trials)) for s in range(0, n_trials, block)]

    def count(b):
        return int(np.count_nonzero(block_fn(*b)[1]))

    if workers <= 1 or len(bounds) == 1:
        successes = sum(count(b) for b in bounds)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            successes = sum(pool.map(count, bounds))
    return McEstimate.from_counts(successes, n_trials)


def mc_detection(sp: SensingParams, geo: Geometry,
                 consts: PhysicalConstants = PhysicalConstants(),
                 n_trials: int = 100_000, master_seed: int = 0, workers: int = 1,
                 poisson: bool = False, block: int = DEFAULT_BLOCK) -> McEstimate:
    """Estimate the detection probability from ``n_trials`` realisations.

    The success count depends only on ``(master_seed, scenario, n_trials)``;
    ``workers`` and ``block`` change scheduling, not results.
    """
    return _run(lambda a, b: detection_block(sp, geo, consts, master_seed, a, b, poisson),
                n_trials, workers, block)


def mc_coverage(cp: CommParams, geo: Geometry,
                consts: PhysicalConstants = PhysicalConstants(),
                n_trials: int = 100_000, master_seed: int = 0, workers: int = 1,
                poisson: bool = False, block: int = DEFAULT_BLOCK) -> McEstimate:
    return _run(lambda a, b: coverage_block(cp, geo, consts, master_seed, a, b, poisson),
                n_trials, workers, block)
