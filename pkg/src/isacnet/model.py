"""Scenario parameters and the pointwise link-level formulas.

Parameter objects are frozen dataclasses in linear SI units.  Derived
thresholds are computed from the rate thresholds (bit/s); SINR thresholds
are never configured directly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .units import PhysicalConstants

__all__ = [
    "SensingParams",
    "CommParams",
    "Geometry",
    "DerivedSensing",
    "DerivedComm",
    "echo_power",
    "sensing_noise",
    "comm_noise",
    "gamma_s_of",
    "gamma_c_of",
    "radar_rate",
    "capacity",
    "derive_sensing",
    "derive_comm",
]

FOUR_PI = 4.0 * math.pi


def _require(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


def _is_count(x) -> bool:
    return isinstance(x, (int, np.integer)) and not isinstance(x, bool)


@dataclass(frozen=True)
class SensingParams:
    """Radar side of one IU.

    Attributes:
        p_s: sensing transmit power, W
        g_t, g_r: transmit / receive antenna gains, linear
        lambda_w: wavelength, m
        sigma_bar: mean radar cross-section, m^2
        d: target distance, m
        alpha: path-loss exponent
        b_s: sensing bandwidth, Hz
        loss_l: system loss factor, linear
        t_pulse: pulse duration, s
        duty: duty cycle
        n_interferers: number of interfering IUs
        zeta_s: detection rate threshold, bit/s
    """

    p_s: float
    g_t: float
    g_r: float
    lambda_w: float
    sigma_bar: float
    d: float
    alpha: float
    b_s: float
    loss_l: float
    t_pulse: float
    duty: float
    n_interferers: int
    zeta_s: float

    def __post_init__(self):
        for name in ("p_s", "g_t", "g_r", "lambda_w", "sigma_bar", "d", "alpha",
                     "b_s", "loss_l", "t_pulse", "duty", "zeta_s"):
            _require(math.isfinite(getattr(self, name)), f"sensing.{name} must be finite")
        _require(self.p_s >= 0, "sensing.p_s must be >= 0")
        _require(self.g_t > 0, "sensing.g_t must be > 0")
        _require(self.g_r > 0, "sensing.g_r must be > 0")
        _require(self.lambda_w > 0, "sensing.lambda_w must be > 0")
        _require(self.sigma_bar > 0, "sensing.sigma_bar must be > 0")
        _require(self.d > 0, "sensing.d must be > 0")
        _require(self.alpha >= 2, "sensing.alpha must be >= 2")
        _require(self.b_s >= 0, "sensing.b_s must be >= 0")
        _require(self.loss_l >= 1, "sensing.loss_l must be >= 1")
        _require(self.t_pulse > 0, "sensing.t_pulse must be > 0")
        _require(0 < self.duty <= 1, "sensing.duty must be in (0, 1]")
        _require(_is_count(self.n_interferers) and self.n_interferers >= 0,
                 "sensing.n_interferers must be an integer >= 0")
        _require(self.zeta_s >= 0, "sensing.zeta_s must be >= 0")


@dataclass(frozen=True)
class CommParams:
    """Communication side of one IU (all powers W, bandwidth Hz, threshold bit/s)."""

    p_c: float
    g_t: float
    g_r: float
    alpha: float
    b_c: float
    loss_l: float
    m_transmitters: int
    zeta_c: float

    def __post_init__(self):
        for name in ("p_c", "g_t", "g_r", "alpha", "b_c", "loss_l", "zeta_c"):
            _require(math.isfinite(getattr(self, name)), f"comm.{name} must be finite")
        _require(self.p_c >= 0, "comm.p_c must be >= 0")
        _require(self.g_t > 0, "comm.g_t must be > 0")
        _require(self.g_r > 0, "comm.g_r must be > 0")
        _require(self.alpha >= 2, "comm.alpha must be >= 2")
        _require(self.b_c >= 0, "comm.b_c must be >= 0")
        _require(self.loss_l >= 1, "comm.loss_l must be >= 1")
        _require(_is_count(self.m_transmitters) and self.m_transmitters >= 1,
                 "comm.m_transmitters must be an integer >= 1")
        _require(self.zeta_c >= 0, "comm.zeta_c must be >= 0")


@dataclass(frozen=True)
class Geometry:
    """Disk of radius ``radius_r`` (m) centred on the typical IU."""

    radius_r: float

    def __post_init__(self):
        _require(math.isfinite(self.radius_r) and self.radius_r > 0,
                 "geometry.radius_r must be > 0")


@dataclass(frozen=True)
class DerivedSensing:
    n0: float
    gamma_s: float
    eta: float
    a_e: float
    s_dens: float

    @property
    def degenerate(self) -> bool:
        return math.isinf(self.gamma_s) or math.isinf(self.eta)


@dataclass(frozen=True)
class DerivedComm:
    n_c: float
    gamma_c: float
    gamma_p: float

    @property
    def degenerate(self) -> bool:
        return math.isinf(self.gamma_c) or math.isinf(self.gamma_p)


def echo_power(sp: SensingParams, sigma, d=None):
    """Target echo power (W) for cross-section ``sigma`` at distance ``d``.

    ``d`` defaults to the scenario's target distance ``sp.d``.
    """
    d = sp.d if d is None else d
    d_arr = np.asarray(d, dtype=float)
    if np.any(d_arr <= 0):
        raise ValueError("distance must be > 0")
    num = sp.p_s * sp.g_t * sp.g_r * sp.lambda_w ** 2 * np.asarray(sigma, dtype=float)
    out = num / (FOUR_PI ** 3 * d_arr ** (2.0 * sp.alpha))
    return float(out) if np.ndim(out) == 0 else out


def sensing_noise(sp: SensingParams, consts: PhysicalConstants = PhysicalConstants()) -> float:
    return consts.thermal_noise(sp.b_s, sp.loss_l)


def comm_noise(cp: CommParams, consts: PhysicalConstants = PhysicalConstants()) -> float:
    # Same thermal model as the sensing receiver, over the communication band.
    return consts.thermal_noise(cp.b_c, cp.loss_l)


def _pow2_minus_one(x: float) -> float:
    try:
        return math.expm1(x * math.log(2.0))
    except OverflowError:
        return math.inf


def gamma_s_of(sp: SensingParams) -> float:
    """SINR threshold equivalent to ``R_B > zeta_s``.

    Returns 0 for ``zeta_s == 0`` and ``inf`` when ``b_s == 0`` with a
    positive rate threshold.
    """
    if sp.zeta_s == 0:
        return 0.0
    if sp.b_s == 0:
        return math.inf
    num = _pow2_minus_one(2.0 * sp.t_pulse * sp.zeta_s / sp.duty)
    return num / (2.0 * sp.t_pulse * sp.b_s)


def gamma_c_of(cp: CommParams) -> float:
    """SINR threshold equivalent to ``C_B > zeta_c``: ``2**(zeta_c/b_c) - 1``."""
    if cp.zeta_c == 0:
        return 0.0
    if cp.b_c == 0:
        return math.inf
    return _pow2_minus_one(cp.zeta_c / cp.b_c)


def radar_rate(sinr_s, sp: SensingParams):
    """Radar estimation information rate in bit/s."""
    x = 2.0 * sp.t_pulse * sp.b_s * np.asarray(sinr_s, dtype=float)
    out = sp.duty / (2.0 * sp.t_pulse) * np.log1p(x) / math.log(2.0)
    return float(out) if np.ndim(out) == 0 else out


def capacity(sinr_c, cp: CommParams):
    """Shannon capacity ``b_c * log2(1 + sinr_c)`` in bit/s."""
    out = cp.b_c * np.log1p(np.asarray(sinr_c, dtype=float)) / math.log(2.0)
    return float(out) if np.ndim(out) == 0 else out


def derive_sensing(sp: SensingParams, consts: PhysicalConstants = PhysicalConstants()) -> DerivedSensing:
    gamma_s = gamma_s_of(sp)
    denom = sp.p_s * sp.g_t * sp.g_r * sp.lambda_w ** 2
    if gamma_s == 0:
        eta = 0.0
    elif denom == 0 or math.isinf(gamma_s):
        eta = math.inf
    else:
        eta = gamma_s * FOUR_PI ** 3 / denom
    return DerivedSensing(
        n0=sensing_noise(sp, consts),
        gamma_s=gamma_s,
        eta=eta,
        a_e=sp.g_r * sp.lambda_w ** 2 / FOUR_PI,
        s_dens=sp.p_s * sp.g_t / FOUR_PI,
    )


def derive_comm(cp: CommParams, consts: PhysicalConstants = PhysicalConstants()) -> DerivedComm:
    gamma_c = gamma_c_of(cp)
    gain = cp.p_c * cp.g_t * cp.g_r
    if gamma_c == 0:
        gamma_p = 0.0
    elif gain == 0 or math.isinf(gamma_c):
        gamma_p = math.inf
    else:
        gamma_p = gamma_c / gain
    return DerivedComm(n_c=comm_noise(cp, consts), gamma_c=gamma_c, gamma_p=gamma_p)
