"""Exact and high-precision laboratory for topological recursion on genus-0
spectral curves, with matrix-model, Toeplitz and Painleve cross-checks."""

__version__ = "0.1.0"
