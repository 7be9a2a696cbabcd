import os
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectralab.mc import (BACKEND, ChainConfig, Histogram, ModelSpec, compare_density,
                           integrated_autocorrelation, sample, splitmix64)
from spectralab.mc import _sweep_py

try:
    from spectralab.mc import _sweep as _sweep_c
except ImportError:
    _sweep_c = None


def _run(kernel, vkind, lo, hi, N=12, sweeps=50, seed=3):
    rng = np.random.Generator(np.random.PCG64(seed))
    nrm, uni = rng.standard_normal(sweeps * N), rng.random(sweeps * N)
    x = {0: np.linspace(-1.8, 1.8, N), 1: np.linspace(0.1, 3.0, N),
         2: np.linspace(-0.9, 0.9, N)}[vkind]
    out = np.empty(sweeps * N)
    acc, stored = kernel.run_sweeps(x, nrm, uni, 0.3, vkind, float(N), lo, hi, sweeps, 2, out, 0)
    return acc, out[: stored * N].copy(), x


@pytest.mark.skipif(_sweep_c is None, reason="compiled kernel not built")
@pytest.mark.parametrize("vkind,lo,hi", [(0, -np.inf, np.inf), (1, 0.0, np.inf), (2, -1.0, 1.0)])
def test_compiled_kernel_bit_identical(vkind, lo, hi):
    a = _run(_sweep_py, vkind, lo, hi)
    b = _run(_sweep_c, vkind, lo, hi)
    assert a[0] == b[0]
    assert np.array_equal(a[1], b[1]) and np.array_equal(a[2], b[2])


def test_pure_python_switch():
    env = dict(os.environ, SPECTRALAB_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from spectralab.mc import BACKEND; print(BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_same_seed_same_samples():
    m = ModelSpec("gaussian")
    cfg = ChainConfig(8, 300, 100, seed=7, chains=2)
    a, b = sample(m, cfg), sample(m, cfg)
    assert np.array_equal(a.values, b.values) and a.acceptance == b.acceptance
    c = sample(m, ChainConfig(8, 300, 100, seed=8, chains=2))
    assert not np.array_equal(a.values, c.values)


def test_workers_do_not_change_result():
    m = ModelSpec("exponential")
    cfg = ChainConfig(6, 200, 50, seed=11, chains=3)
    assert np.array_equal(sample(m, cfg).values, sample(m, cfg, workers=3).values)


def test_splitmix64_reference_vector():
    assert splitmix64(0, 3) == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_samples_respect_domain():
    s = sample(ModelSpec("toeplitz", gamma="pi/2"), ChainConfig(6, 200, 50, seed=1))
    assert (np.abs(s.values) < 1.0).all()
    s = sample(ModelSpec("gaussian_plus", T=1.0), ChainConfig(6, 200, 50, seed=1))
    assert (s.values > 0).all()


@given(st.lists(st.floats(-5, 5), min_size=1, max_size=200), st.integers(1, 40))
@settings(max_examples=50, deadline=None)
def test_histogram_mass_is_exactly_one(vals, bins):
    h = Histogram.of(np.array(vals), -5.0, 5.0, bins)
    assert h.mass() == Fraction(1)


def test_autocorrelation_of_ar1():
    rng = np.random.Generator(np.random.PCG64(5))
    phi, n = 0.8, 200_000
    e = rng.standard_normal(n)
    x = np.empty(n)
    x[0] = 0.0
    for i in range(1, n):
        x[i] = phi * x[i - 1] + e[i]
    tau = integrated_autocorrelation(x)
    assert abs(tau - (1 + phi) / (1 - phi)) < 0.5
    assert abs(integrated_autocorrelation(e) - 1) < 0.1


def test_density_comparison_small_run():
    s = sample(ModelSpec("gaussian"), ChainConfig(20, 2500, 500, seed=2))
    r = compare_density(s, bins=30)
    assert r["L1"] < 0.08
    assert r["histogram"].mass() == 1


@pytest.mark.parametrize("kw", [dict(N=0, sweeps=10, burn_in=1), dict(N=3, sweeps=5, burn_in=5),
                                dict(N=3, sweeps=10, burn_in=1, thin=0),
                                dict(N=3, sweeps=10, burn_in=1, scale=-1.0)])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        ChainConfig(**kw)


def test_model_validation():
    with pytest.raises(ValueError):
        ModelSpec("nope")
    with pytest.raises(ValueError):
        ModelSpec("gaussian", T=0)
    with pytest.raises(ValueError):
        ModelSpec("toeplitz", gamma="pi")


def test_backend_reported():
    assert BACKEND in ("cython", "python")
