"""Topological recursion on genus-0 spectral curves."""

from .engine import (Correlator, EngineError, TREngine, engine_for, eval_correlator,
                     free_energy, omega, serialize_free_energy)
from .properties import check_properties, dilaton, loop_equation
from .airy import QuantumCurveError, airy_quantum_check

__all__ = [
    "Correlator", "EngineError", "TREngine", "engine_for", "eval_correlator",
    "free_energy", "omega", "serialize_free_energy", "check_properties", "dilaton",
    "loop_equation", "QuantumCurveError", "airy_quantum_check",
]
