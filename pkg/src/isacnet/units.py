"""Logarithmic/linear unit conversions and physical constants.

Everything inside the package works in linear SI units (W, m, Hz, m^2);
the helpers here are only used where configuration enters or leaves.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PhysicalConstants",
    "db_to_linear",
    "linear_to_db",
    "dbm_to_watts",
    "watts_to_dbm",
    "dbi_to_linear",
    "dbsm_to_m2",
    "m2_to_dbsm",
]


@dataclass(frozen=True)
class PhysicalConstants:
    """Boltzmann constant ``k0`` (W s/K) and reference temperature ``t0`` (K)."""

    k0: float = 1.38e-23
    t0: float = 290.0

    def __post_init__(self):
        if not (math.isfinite(self.k0) and self.k0 > 0):
            raise ValueError(f"k0 must be positive and finite, got {self.k0!r}")
        if not (math.isfinite(self.t0) and self.t0 > 0):
            raise ValueError(f"t0 must be positive and finite, got {self.t0!r}")

    def thermal_noise(self, bandwidth: float, loss: float = 1.0) -> float:
        """Noise power k0*t0*B*L in W."""
        return self.k0 * self.t0 * bandwidth * loss


def _check_finite(x, name):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite, got {x!r}")
    return arr


def _out(arr):
    return float(arr) if arr.ndim == 0 else arr


def db_to_linear(x):
    """Power ratio in dB -> linear ratio, ``10**(x/10)``."""
    return _out(10.0 ** (_check_finite(x, "dB value") / 10.0))


def linear_to_db(x):
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0):
        raise ValueError(f"linear ratio must be positive and finite, got {x!r}")
    return _out(10.0 * np.log10(arr))


def dbm_to_watts(x):
    """Power in dBm -> W."""
    return _out(10.0 ** ((_check_finite(x, "dBm value") - 30.0) / 10.0))


def watts_to_dbm(x):
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0):
        raise ValueError(f"power must be positive and finite to express in dBm, got {x!r}")
    return _out(10.0 * np.log10(arr) + 30.0)


# Antenna gains (dBi) and losses (dB) are plain power ratios.
dbi_to_linear = db_to_linear


def dbsm_to_m2(x):
    """Radar cross-section in dBsm -> m^2."""
    return _out(10.0 ** (_check_finite(x, "dBsm value") / 10.0))


def m2_to_dbsm(x):
    return linear_to_db(x)
