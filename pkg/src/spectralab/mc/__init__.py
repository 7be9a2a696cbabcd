"""Metropolis sampling of the eigenvalue measures."""

from .kernel import BACKEND
from .sampler import (MODELS, ChainConfig, Histogram, ModelSpec, SampleSet, compare_density,
                      edge_estimate, histogram_csv, integrated_autocorrelation,
                      positive_fraction, sample, splitmix64, summary_json)

__all__ = ["BACKEND", "MODELS", "ChainConfig", "Histogram", "ModelSpec", "SampleSet",
           "compare_density", "edge_estimate", "histogram_csv", "integrated_autocorrelation",
           "positive_fraction", "sample", "splitmix64", "summary_json"]
