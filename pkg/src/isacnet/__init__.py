"""Sensing/communication trade-off analysis for distributed ISAC networks.

Closed-form detection and coverage probabilities (``analytic``), an
independent Monte-Carlo oracle (``montecarlo``) and budget sweeps
(``tradeoff``) over a disk network centred on a typical user.
"""
from .analytic import AnalyticResult, QuadratureSpec, pc_analytic, pd_analytic
from .config import ConfigError, ScenarioConfig, available_scenarios, load_config, with_param
from .model import (
    CommParams,
    DerivedComm,
    DerivedSensing,
    Geometry,
    SensingParams,
    derive_comm,
    derive_sensing,
)
from .montecarlo import McEstimate, mc_coverage, mc_detection
from .tradeoff import Budget, Frontier, FrontierPoint, pareto_filter, sweep
from .units import PhysicalConstants

__version__ = "0.1.0"

__all__ = [
    "AnalyticResult", "QuadratureSpec", "pc_analytic", "pd_analytic",
    "ConfigError", "ScenarioConfig", "available_scenarios", "load_config", "with_param",
    "CommParams", "DerivedComm", "DerivedSensing", "Geometry", "SensingParams",
    "derive_comm", "derive_sensing",
    "McEstimate", "mc_coverage", "mc_detection",
    "Budget", "Frontier", "FrontierPoint", "pareto_filter", "sweep",
    "PhysicalConstants",
]
