"""Arc-symbol Toeplitz determinants and their large-N residuals."""

from .lab import (COLUMNS, SymbolSpec, ToeplitzResult, auto_precision, format_table,
                  fourier_coeffs, lndet, quadrature_oracle, residual_table)

__all__ = ["COLUMNS", "SymbolSpec", "ToeplitzResult", "auto_precision", "format_table",
           "fourier_coeffs", "lndet", "quadrature_oracle", "residual_table"]
