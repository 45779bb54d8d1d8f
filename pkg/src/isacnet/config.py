"""JSON scenario files.

Logarithmic units live only here: powers in dBm, gains in dBi, losses in
dB, cross-section in dBsm.  A power of ``null`` means 0 W.  Unknown keys
are rejected so typos fail loudly.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from .analytic import QuadratureSpec
from .model import CommParams, Geometry, SensingParams
from .units import (
    PhysicalConstants,
    db_to_linear,
    dbm_to_watts,
    dbsm_to_m2,
    linear_to_db,
    watts_to_dbm,
)

__all__ = [
    "ConfigError",
    "MonteCarloSettings",
    "BudgetSettings",
    "ScenarioConfig",
    "load_config",
    "available_scenarios",
    "SENSING_PARAMS",
    "COMM_PARAMS",
    "SHARED_PARAMS",
    "PARAM_ALIASES",
    "canonical_param",
    "with_param",
]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class MonteCarloSettings:
    master_seed: int = 0
    n_trials: int = 100_000
    poisson_counts: bool = False

    def __post_init__(self):
        if not (isinstance(self.master_seed, int) and 0 <= self.master_seed < 2 ** 64):
            raise ValueError("mc.master_seed must be an unsigned 64-bit integer")
        if not (isinstance(self.n_trials, int) and self.n_trials >= 1):
            raise ValueError("mc.n_trials must be an integer >= 1")


@dataclass(frozen=True)
class BudgetSettings:
    """Totals for trade-off sweeps: power ``p_t`` (W) and bandwidth ``b_total`` (Hz)."""

    p_t: float = 1.0
    b_total: float = 20e6
    steps: int = 101

    def __post_init__(self):
        if not (math.isfinite(self.p_t) and self.p_t > 0):
            raise ValueError("tradeoff.p_t_dbm must give a positive power")
        if not (math.isfinite(self.b_total) and self.b_total > 0):
            raise ValueError("tradeoff.b_total_hz must be > 0")
        if not (isinstance(self.steps, int) and self.steps >= 2):
            raise ValueError("tradeoff.steps must be an integer >= 2")


@dataclass(frozen=True)
class ScenarioConfig:
    sensing: SensingParams
    comm: CommParams
    geometry: Geometry
    constants: PhysicalConstants = PhysicalConstants()
    quadrature: QuadratureSpec = QuadratureSpec()
    mc: MonteCarloSettings = MonteCarloSettings()
    tradeoff: BudgetSettings = BudgetSettings()
    name: str = ""
    description: str = ""
    stated: tuple = ()
    assumed: tuple = ()

    # -- (de)serialisation ---------------------------------------------------

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioConfig":
        try:
            return _from_dict(data)
        except ConfigError:
            raise
        except (ValueError, TypeError) as exc:
            raise ConfigError(str(exc)) from exc

    def to_dict(self) -> dict:
        sp, cp = self.sensing, self.comm
        out = {}
        if self.name:
            out["name"] = self.name
        if self.description:
            out["description"] = self.description
        if self.stated:
            out["stated"] = list(self.stated)
        if self.assumed:
            out["assumed"] = list(self.assumed)
        out["sensing"] = {
            "p_s_dbm": _w_to_dbm(sp.p_s),
            "g_t_dbi": linear_to_db(sp.g_t),
            "g_r_dbi": linear_to_db(sp.g_r),
            "lambda_w_m": sp.lambda_w,
            "sigma_bar_dbsm": linear_to_db(sp.sigma_bar),
            "d_m": sp.d,
            "alpha": sp.alpha,
            "b_s_hz": sp.b_s,
            "loss_db": linear_to_db(sp.loss_l),
            "t_pulse_s": sp.t_pulse,
            "duty": sp.duty,
            "n_interferers": sp.n_interferers,
            "zeta_s_bps": sp.zeta_s,
        }
        out["comm"] = {
            "p_c_dbm": _w_to_dbm(cp.p_c),
            "g_t_dbi": linear_to_db(cp.g_t),
            "g_r_dbi": linear_to_db(cp.g_r),
            "alpha": cp.alpha,
            "b_c_hz": cp.b_c,
            "loss_db": linear_to_db(cp.loss_l),
            "m_transmitters": cp.m_transmitters,
            "zeta_c_bps": cp.zeta_c,
        }
        out["geometry"] = {"radius_m": self.geometry.radius_r}
        out["constants"] = {"k0": self.constants.k0, "t0": self.constants.t0}
        q = self.quadrature
        out["quadrature"] = {"rel_tol": q.rel_tol, "abs_tol": q.abs_tol, "max_depth": q.max_depth}
        out["mc"] = {"master_seed": self.mc.master_seed, "n_trials": self.mc.n_trials,
                     "poisson_counts": self.mc.poisson_counts}
        out["tradeoff"] = {"p_t_dbm": watts_to_dbm(self.tradeoff.p_t),
                           "b_total_hz": self.tradeoff.b_total, "steps": self.tradeoff.steps}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def evolve(self, **changes) -> "ScenarioConfig":
        return replace(self, **changes)


def _w_to_dbm(w):
    return None if w == 0 else watts_to_dbm(w)


def _dbm_or_zero(v, where):
    if v is None:
        return 0.0
    return dbm_to_watts(_number(v, where))


def _number(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {v!r}")
    if not math.isfinite(v):
        raise ConfigError(f"{where}: must be finite, got {v!r}")
    return float(v)


def _integer(v, where):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{where}: expected an integer, got {v!r}")
    return v


def _section(data, name, allowed, required=True):
    if name not in data:
        if required:
            raise ConfigError(f"missing section {name!r}")
        return {}
    sec = data[name]
    if not isinstance(sec, dict):
        raise ConfigError(f"section {name!r} must be an object")
    unknown = set(sec) - set(allowed)
    if unknown:
        raise ConfigError(f"{name}: unknown field(s) {sorted(unknown)}")
    if required:
        missing = [k for k in allowed if k not in sec]
        if missing:
            raise ConfigError(f"{name}: missing field(s) {missing}")
    return sec


_SENSING_KEYS = ("p_s_dbm", "g_t_dbi", "g_r_dbi", "lambda_w_m", "sigma_bar_dbsm", "d_m",
                 "alpha", "b_s_hz", "loss_db", "t_pulse_s", "duty", "n_interferers",
                 "zeta_s_bps")
_COMM_KEYS = ("p_c_dbm", "g_t_dbi", "g_r_dbi", "alpha", "b_c_hz", "loss_db",
              "m_transmitters", "zeta_c_bps")
_TOP_KEYS = {"name", "description", "stated", "assumed", "sensing", "comm", "geometry",
             "constants", "quadrature", "mc", "tradeoff"}


def _wrap(where, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def _from_dict(data):
    if not isinstance(data, dict):
        raise ConfigError("scenario must be a JSON object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown top-level field(s) {sorted(unknown)}")

    s = _section(data, "sensing", _SENSING_KEYS)
    num = lambda sec, k, pre: _number(sec[k], f"{pre}.{k}")  # noqa: E731
    sensing = _wrap("sensing", SensingParams,
        p_s=_dbm_or_zero(s["p_s_dbm"], "sensing.p_s_dbm"),
        g_t=db_to_linear(num(s, "g_t_dbi", "sensing")),
        g_r=db_to_linear(num(s, "g_r_dbi", "sensing")),
        lambda_w=num(s, "lambda_w_m", "sensing"),
        sigma_bar=dbsm_to_m2(num(s, "sigma_bar_dbsm", "sensing")),
        d=num(s, "d_m", "sensing"),
        alpha=num(s, "alpha", "sensing"),
        b_s=num(s, "b_s_hz", "sensing"),
        loss_l=db_to_linear(num(s, "loss_db", "sensing")),
        t_pulse=num(s, "t_pulse_s", "sensing"),
        duty=num(s, "duty", "sensing"),
        n_interferers=_integer(s["n_interferers"], "sensing.n_interferers"),
        zeta_s=num(s, "zeta_s_bps", "sensing"),
    )
    c = _section(data, "comm", _COMM_KEYS)
    comm = _wrap("comm", CommParams,
        p_c=_dbm_or_zero(c["p_c_dbm"], "comm.p_c_dbm"),
        g_t=db_to_linear(num(c, "g_t_dbi", "comm")),
        g_r=db_to_linear(num(c, "g_r_dbi", "comm")),
        alpha=num(c, "alpha", "comm"),
        b_c=num(c, "b_c_hz", "comm"),
        loss_l=db_to_linear(num(c, "loss_db", "comm")),
        m_transmitters=_integer(c["m_transmitters"], "comm.m_transmitters"),
        zeta_c=num(c, "zeta_c_bps", "comm"),
    )
    g = _section(data, "geometry", ("radius_m",))
    geometry = _wrap("geometry", Geometry, num(g, "radius_m", "geometry"))

    k = _section(data, "constants", ("k0", "t0"), required=False)
    constants = _wrap("constants", PhysicalConstants,
                      **{f: _number(v, f"constants.{f}") for f, v in k.items()})
    q = _section(data, "quadrature", ("rel_tol", "abs_tol", "max_depth"), required=False)
    qkw = {f: (_integer(v, f"quadrature.{f}") if f == "max_depth" else _number(v, f"quadrature.{f}"))
           for f, v in q.items()}
    quadrature = _wrap("quadrature", QuadratureSpec, **qkw)
    m = _section(data, "mc", ("master_seed", "n_trials", "poisson_counts"), required=False)
    mkw = {f: _integer(v, f"mc.{f}") for f, v in m.items() if f != "poisson_counts"}
    if "poisson_counts" in m:
        if not isinstance(m["poisson_counts"], bool):
            raise ConfigError("mc.poisson_counts: expected true/false")
        mkw["poisson_counts"] = m["poisson_counts"]
    mc = _wrap("mc", MonteCarloSettings, **mkw)
    t = _section(data, "tradeoff", ("p_t_dbm", "b_total_hz", "steps"), required=False)
    tkw = {}
    if "p_t_dbm" in t:
        tkw["p_t"] = dbm_to_watts(_number(t["p_t_dbm"], "tradeoff.p_t_dbm"))
    if "b_total_hz" in t:
        tkw["b_total"] = _number(t["b_total_hz"], "tradeoff.b_total_hz")
    if "steps" in t:
        tkw["steps"] = _integer(t["steps"], "tradeoff.steps")
    budget = _wrap("tradeoff", BudgetSettings, **tkw)

    for key in ("name", "description"):
        if key in data and not isinstance(data[key], str):
            raise ConfigError(f"{key}: expected a string")
    for key in ("stated", "assumed"):
        if key in data and not (isinstance(data[key], list)
                                and all(isinstance(x, str) for x in data[key])):
            raise ConfigError(f"{key}: expected a list of strings")

    return ScenarioConfig(
        sensing=sensing, comm=comm, geometry=geometry, constants=constants,
        quadrature=quadrature, mc=mc, tradeoff=budget,
        name=data.get("name", ""), description=data.get("description", ""),
        stated=tuple(data.get("stated", ())), assumed=tuple(data.get("assumed", ())),
    )


def available_scenarios() -> list[str]:
    root = resources.files("isacnet") / "scenarios"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_config(source) -> ScenarioConfig:
    """Load a scenario from a path, or by name from the shipped fixtures
    (``table1-defaults``, ``fig2-assumed`` ... ``fig5-assumed``)."""
    path = Path(source)
    if path.is_file():
        text = path.read_text()
    elif str(source) in available_scenarios():
        text = (resources.files("isacnet") / "scenarios" / f"{source}.json").read_text()
    else:
        raise ConfigError(f"no such scenario file or fixture: {source}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}: invalid JSON ({exc})") from exc
    return ScenarioConfig.from_dict(data)


# -- 1-D sweep parameters -----------------------------------------------------
# Values are in configuration units (dBm, dB, dBsm, Hz, m, bit/s).

SENSING_PARAMS = {"p_s_dbm", "p_s_w", "d_m", "zeta_s_bps", "n_interferers", "b_s_hz",
                  "sigma_bar_dbsm", "t_pulse_s", "duty", "lambda_w_m"}
COMM_PARAMS = {"p_c_dbm", "p_c_w", "zeta_c_bps", "m_transmitters", "b_c_hz"}
SHARED_PARAMS = {"alpha", "loss_db", "radius_m", "g_t_dbi", "g_r_dbi"}
PARAM_ALIASES = {
    "p_s": "p_s_dbm", "p_c": "p_c_dbm", "d": "d_m", "zeta_s": "zeta_s_bps",
    "zeta_c": "zeta_c_bps", "n": "n_interferers", "m": "m_transmitters", "b_s": "b_s_hz",
    "b_c": "b_c_hz", "sigma_bar": "sigma_bar_dbsm", "loss": "loss_db", "radius": "radius_m",
}
_INTEGER_PARAMS = {"n_interferers", "m_transmitters"}


def canonical_param(name: str) -> str:
    name = PARAM_ALIASES.get(name, name)
    if name not in SENSING_PARAMS | COMM_PARAMS | SHARED_PARAMS:
        raise ConfigError(f"unknown sweep parameter {name!r}")
    return name


def with_param(cfg: ScenarioConfig, name: str, value: float) -> ScenarioConfig:
    """Copy of ``cfg`` with one parameter set (configuration units)."""
    name = canonical_param(name)
    if name in _INTEGER_PARAMS:
        if float(value) != round(value):
            raise ConfigError(f"{name} must be an integer, got {value!r}")
        value = int(round(value))
    sp, cp, geo = cfg.sensing, cfg.comm, cfg.geometry
    try:
        if name == "p_s_dbm":
            sp = replace(sp, p_s=dbm_to_watts(value))
        elif name == "p_s_w":
            sp = replace(sp, p_s=float(value))
        elif name == "p_c_dbm":
            cp = replace(cp, p_c=dbm_to_watts(value))
        elif name == "p_c_w":
            cp = replace(cp, p_c=float(value))
        elif name == "sigma_bar_dbsm":
            sp = replace(sp, sigma_bar=dbsm_to_m2(value))
        elif name == "loss_db":
            sp = replace(sp, loss_l=db_to_linear(value))
            cp = replace(cp, loss_l=db_to_linear(value))
        elif name in ("g_t_dbi", "g_r_dbi"):
            attr = name[:3]
            sp = replace(sp, **{attr: db_to_linear(value)})
            cp = replace(cp, **{attr: db_to_linear(value)})
        elif name == "alpha":
            sp = replace(sp, alpha=float(value))
            cp = replace(cp, alpha=float(value))
        elif name == "radius_m":
            geo = Geometry(float(value))
        else:
            attr = {"d_m": "d", "zeta_s_bps": "zeta_s", "n_interferers": "n_interferers",
                    "b_s_hz": "b_s", "t_pulse_s": "t_pulse", "duty": "duty",
                    "lambda_w_m": "lambda_w", "zeta_c_bps": "zeta_c",
                    "m_transmitters": "m_transmitters", "b_c_hz": "b_c"}[name]
            if name in SENSING_PARAMS:
                sp = replace(sp, **{attr: value if name in _INTEGER_PARAMS else float(value)})
            else:
                cp = replace(cp, **{attr: value if name in _INTEGER_PARAMS else float(value)})
    except ValueError as exc:
        raise ConfigError(f"{name}={value!r}: {exc}") from exc
    return replace(cfg, sensing=sp, comm=cp, geometry=geo)
