"""Painleve Lax pairs, WKB, the sine-kernel tau function and Calogero-Moser."""

from .lax import (DEFAULT_PARAMS, NAMES, ExcludedDivisor, LaxPair, PlaneCurve,
                  compatibility_check, hamilton_painleve_residual, lax_catalog,
                  lax_spectral_curve, leading_data, p1_curve_target, p2_curve_target,
                  random_points, sample_compatibility)
from .wkb import DegenerateSolve, W2Report, WkbSeries, p2_w2_check, p2_wkb
from .p5 import P5Result, SigmaSeries, adjudicate_g5, p5_tau_series, pi_balance, solve_sigma
from .calogero import (DEFAULT_P0, DEFAULT_Q0, CalogeroReport, CollisionError, calogero_run,
                       halving_ratio, hamiltonian, traces)
from .fredholm import (ENSEMBLES, NystromNonConvergence, OdeFailure, fig8_table, fredholm_csv,
                       fredholm_sine, sigma_ode_gap, sigma_ode_solve, universal_w2,
                       verify_sinc_half_line)
from .reports import dumps, report

__all__ = [
    "DEFAULT_PARAMS", "NAMES", "ExcludedDivisor", "LaxPair", "PlaneCurve",
    "compatibility_check", "hamilton_painleve_residual", "lax_catalog", "lax_spectral_curve",
    "leading_data", "p1_curve_target", "p2_curve_target", "random_points",
    "sample_compatibility", "DegenerateSolve", "W2Report", "WkbSeries", "p2_w2_check",
    "p2_wkb", "P5Result", "SigmaSeries", "adjudicate_g5", "p5_tau_series", "pi_balance",
    "solve_sigma", "DEFAULT_P0", "DEFAULT_Q0", "CalogeroReport", "CollisionError",
    "calogero_run", "halving_ratio", "hamiltonian", "traces", "ENSEMBLES",
    "NystromNonConvergence", "OdeFailure", "fig8_table", "fredholm_csv", "fredholm_sine",
    "sigma_ode_gap", "sigma_ode_solve", "universal_w2", "verify_sinc_half_line", "dumps",
    "report",
]
