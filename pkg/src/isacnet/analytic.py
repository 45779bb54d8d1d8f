"""Closed-form detection and coverage probabilities evaluated by quadrature.

Both metrics reduce to Laplace transforms of the aggregate interference of
a fixed number of nodes placed uniformly in the disk.  Each interferer
contributes one factor

    F(K) = (2/R^2) * int_0^R l^(1+a) / (l^a + K) dl,

so the interference term of a metric is ``F**count``.  Integrals are taken
in the normalised variable ``x = l/R`` where ``F = 2 int_0^1 x^(1+a)/(x^a + k) dx``
with ``k = K/R^a``; the two forms are identical.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy import integrate

from .model import (
    FOUR_PI,
    CommParams,
    DerivedComm,
    DerivedSensing,
    Geometry,
    SensingParams,
    derive_comm,
    derive_sensing,
)
from .units import PhysicalConstants

__all__ = [
    "QuadratureSpec",
    "AnalyticResult",
    "QuadratureError",
    "interference_factor",
    "closed_form_factor_alpha2",
    "sensing_interference_coeff",
    "inner_sensing_factor",
    "inner_comm_factor",
    "pd_analytic",
    "pc_analytic",
]


class QuadratureError(ArithmeticError):
    """Adaptive quadrature did not reach tolerance within ``max_depth``."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for every integral.  ``max_depth`` caps the number of
    adaptive subintervals per integral."""

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_depth: int = 50

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("quadrature.rel_tol must be > 0")
        if not self.abs_tol > 0:
            raise ValueError("quadrature.abs_tol must be > 0")
        if not (isinstance(self.max_depth, int) and self.max_depth >= 10):
            raise ValueError("quadrature.max_depth must be an integer >= 10")


@dataclass(frozen=True)
class AnalyticResult:
    """A probability in [0, 1].

    ``est_error`` is the propagated quadrature error bound plus any amount
    removed by clamping.  ``flags`` names degenerate limits hit on the way
    (``zero_threshold``, ``degenerate_allocation``, ``threshold_overflow``,
    ``nonconvergence``, ``clamped``).
    """

    value: float
    est_error: float = 0.0
    flags: frozenset = field(default_factory=frozenset)

    @property
    def converged(self) -> bool:
        return "nonconvergence" not in self.flags


def _finish(value, err, flags):
    flags = set(flags)
    if value < 0.0 or value > 1.0:
        clamped = min(max(value, 0.0), 1.0)
        err += abs(value - clamped)
        value = clamped
        flags.add("clamped")
    return AnalyticResult(float(value), float(err), frozenset(flags))


def _quad(f, q: QuadratureSpec):
    res = integrate.quad(f, 0.0, 1.0, epsabs=q.abs_tol, epsrel=q.rel_tol,
                         limit=q.max_depth, full_output=1)
    value, err = res[0], res[1]
    return value, err, len(res) <= 3


def interference_factor(k: float, alpha: float, q: QuadratureSpec = QuadratureSpec()):
    """Single-interferer factor ``2 int_0^1 x^(1+a)/(x^a + k) dx``.

    ``k`` is the interference coefficient already divided by ``R**alpha``.
    Returns ``(value, error_bound, converged)``.
    """
    if k == 0.0:
        return 1.0, 0.0, True
    if math.isinf(k):
        return 0.0, 0.0, True
    value, err, ok = _quad(lambda x: x ** (1.0 + alpha) / (x ** alpha + k), q)
    return 2.0 * value, 2.0 * err, ok


def closed_form_factor_alpha2(u: float) -> float:
    """Exact factor for ``alpha = 2`` with ``u = c/R^2``: ``1 - u*ln(1 + 1/u)``.

    Uses the series in ``1/u`` when the direct form would cancel.
    """
    if u == 0.0:
        return 1.0
    if math.isinf(u):
        return 0.0
    x = 1.0 / u
    if x < 1e-3:
        return sum((-1) ** (j + 1) * x ** j / (j + 1) for j in range(1, 8))
    return 1.0 - u * math.log1p(x)


def sensing_interference_coeff(ds: DerivedSensing, sp: SensingParams) -> float:
    """``4*pi*gamma_s*D^(2a)/sigma_bar``: what ``eta*A_e*S*D^(2a)/sigma_bar``
    reduces to.  Computed without ``p_s`` so it is exactly power-invariant."""
    if ds.gamma_s == 0.0:
        return 0.0
    return FOUR_PI * ds.gamma_s * sp.d ** (2.0 * sp.alpha) / sp.sigma_bar


def inner_sensing_factor(ds: DerivedSensing, sp: SensingParams, geo: Geometry,
                         q: QuadratureSpec = QuadratureSpec()) -> float:
    """Per-interferer Laplace factor of the sensing interference, in [0, 1]."""
    k = sensing_interference_coeff(ds, sp) / geo.radius_r ** sp.alpha
    value, err, ok = interference_factor(k, sp.alpha, q)
    if not ok:
        raise QuadratureError(f"sensing interference factor: {value!r} +/- {err:.3g}")
    return value


def inner_comm_factor(dc: DerivedComm, r0: float, geo: Geometry, alpha: float,
                      q: QuadratureSpec = QuadratureSpec()) -> float:
    """Per-interferer factor for a desired link of length ``r0``."""
    if not 0 < r0 <= geo.radius_r:
        raise ValueError("r0 must lie in (0, R]")
    k = dc.gamma_c * (r0 / geo.radius_r) ** alpha if dc.gamma_c else 0.0
    value, err, ok = interference_factor(k, alpha, q)
    if not ok:
        raise QuadratureError(f"comm interference factor: {value!r} +/- {err:.3g}")
    return value


def pd_analytic(sp: SensingParams, geo: Geometry,
                consts: PhysicalConstants = PhysicalConstants(),
                q: QuadratureSpec = QuadratureSpec()) -> AnalyticResult:
    """Probability of detection ``P[R_B > zeta_s]``."""
    if sp.zeta_s == 0:
        return AnalyticResult(1.0, 0.0, frozenset({"zero_threshold"}))
    if sp.p_s == 0 or sp.b_s == 0:
        return AnalyticResult(0.0, 0.0, frozenset({"degenerate_allocation"}))
    ds = derive_sensing(sp, consts)
    if math.isinf(ds.gamma_s):
        return AnalyticResult(0.0, 0.0, frozenset({"threshold_overflow"}))

    d2a = sp.d ** (2.0 * sp.alpha)
    noise_term = math.exp(-ds.eta * d2a * ds.n0 / sp.sigma_bar)
    n = sp.n_interferers
    if n == 0:
        return _finish(noise_term, 0.0, ())

    k = sensing_interference_coeff(ds, sp) / geo.radius_r ** sp.alpha
    factor, ferr, ok = interference_factor(k, sp.alpha, q)
    value = noise_term * factor ** n
    err = noise_term * n * factor ** (n - 1) * ferr
    return _finish(value, err, () if ok else ("nonconvergence",))


def pc_analytic(cp: CommParams, geo: Geometry,
                consts: PhysicalConstants = PhysicalConstants(),
                q: QuadratureSpec = QuadratureSpec()) -> AnalyticResult:
    """Probability of coverage ``P[C_B > zeta_c]``.

    Integrates ``(2 r0/R^2) exp(-gamma_p r0^a N_c) F(gamma_c r0^a)^(m-1)``
    over the desired-link length ``r0`` in (0, R].
    """
    if cp.zeta_c == 0:
        return AnalyticResult(1.0, 0.0, frozenset({"zero_threshold"}))
    if cp.p_c == 0 or cp.b_c == 0:
        return AnalyticResult(0.0, 0.0, frozenset({"degenerate_allocation"}))
    dc = derive_comm(cp, consts)
    if math.isinf(dc.gamma_c):
        return AnalyticResult(0.0, 0.0, frozenset({"threshold_overflow"}))

    a = cp.alpha
    noise_scale = dc.gamma_p * geo.radius_r ** a * dc.n_c
    count = cp.m_transmitters - 1
    inner = {"err": 0.0, "ok": True}

    def outer(x0):
        x0a = x0 ** a
        val = 2.0 * x0 * math.exp(-noise_scale * x0a)
        if count:
            f, ferr, ok = interference_factor(dc.gamma_c * x0a, a, q)
            inner["err"] = max(inner["err"], count * f ** (count - 1) * ferr)
            inner["ok"] &= ok
            val *= f ** count
        return val

    value, err, ok = _quad(outer, q)
    # inner errors enter through a unit-mass density, so they add at most once
    err += inner["err"]
    flags = () if (ok and inner["ok"]) else ("nonconvergence",)
    return _finish(value, err, flags)
