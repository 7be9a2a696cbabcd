"""Pick the compiled sweep kernel when it is built, else the Python one."""

import os

try:
    if os.environ.get("SPECTRALAB_PURE_PYTHON"):
        raise ImportError
    from ._sweep import run_sweeps
    BACKEND = "cython"
except ImportError:
    from ._sweep_py import run_sweeps
    BACKEND = "python"

__all__ = ["run_sweeps", "BACKEND"]
