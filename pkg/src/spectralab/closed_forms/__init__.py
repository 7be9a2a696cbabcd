"""Closed forms the recursion is checked against."""

from .constexpr import IPI, LN2PI, ONE, ZETA1, AsymptoticSeries, ConstantExpr
from .oracles import (FAMILIES, MODELS, SINE_G5, Disputed, OracleRangeError, PartitionValue,
                      chekhov_f1, fg_oracle, hard_edge_data, partition_oracle)
from .series import (BarnesResult, EngineMismatch, barnes_series, gaussian_lnz_coefficient,
                     gaussian_lnz_reconstruction, gaussian_lnz_series, positive_prob,
                     positive_prob_series, selberg_constant, stirling_barnes, stirling_series,
                     toeplitz_coefficient_engine, toeplitz_coefficient_paper, toeplitz_expansion,
                     toeplitz_series)

__all__ = [
    "IPI", "LN2PI", "ONE", "ZETA1", "AsymptoticSeries", "ConstantExpr",
    "FAMILIES", "MODELS", "SINE_G5", "Disputed", "OracleRangeError", "PartitionValue",
    "chekhov_f1", "fg_oracle", "hard_edge_data", "partition_oracle",
    "BarnesResult", "EngineMismatch", "barnes_series", "gaussian_lnz_coefficient",
    "gaussian_lnz_reconstruction", "gaussian_lnz_series", "positive_prob",
    "positive_prob_series", "selberg_constant", "stirling_barnes", "stirling_series",
    "toeplitz_coefficient_engine", "toeplitz_coefficient_paper", "toeplitz_expansion",
    "toeplitz_series",
]
