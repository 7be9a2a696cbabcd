"""Genus-0 spectral curves, equilibrium densities and the one-cut solver."""

from .curve import (CATALOG, DEFAULTS, CurveError, NeedsAlgebraicExtension, SpectralCurve,
                    ValidationReport, catalog, validate)
from .curvefile import dumps, loads, read, write
from .density import DensityModel, density_check
from .onecut import OneCutError, PotentialSpec, implied_density, one_cut_solve

__all__ = [
    "CATALOG", "DEFAULTS", "CurveError", "NeedsAlgebraicExtension", "SpectralCurve",
    "ValidationReport", "catalog", "validate", "dumps", "loads", "read", "write",
    "DensityModel", "density_check", "OneCutError", "PotentialSpec", "implied_density",
    "one_cut_solve",
]
