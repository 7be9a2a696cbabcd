"""Time the compiled and the pure-Python Metropolis sweep kernels on the
same random block and check that they agree bit for bit.

    python3 benchmarks/bench_sweep.py [--N 30] [--sweeps 200] [--repeat 3]
"""

import argparse
import time

import numpy as np

from spectralab.mc import _sweep_py

try:
    from spectralab.mc import _sweep as _sweep_c
except ImportError:
    _sweep_c = None


def run(kernel, N, sweeps, seed):
    rng = np.random.Generator(np.random.PCG64(seed))
    nrm, uni = rng.standard_normal(sweeps * N), rng.random(sweeps * N)
    x = np.linspace(-1.9, 1.9, N)
    out = np.empty(sweeps * N)
    t0 = time.perf_counter()
    acc, stored = kernel.run_sweeps(x, nrm, uni, 2.0 / N, 0, float(N), -np.inf, np.inf,
                                    sweeps, 1, out, 0)
    return time.perf_counter() - t0, acc, out[: stored * N]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--N", type=int, default=30)
    ap.add_argument("--sweeps", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    a = ap.parse_args()
    rows = []
    backends = [("python", _sweep_py)] + ([("cython", _sweep_c)] if _sweep_c else [])
    results = {}
    for name, k in backends:
        best = min(run(k, a.N, a.sweeps, a.seed)[0] for _ in range(a.repeat))
        _, acc, samples = run(k, a.N, a.sweeps, a.seed)
        results[name] = (acc, samples)
        rows.append((name, best, a.N * a.sweeps / best))
    print("backend,seconds,site_updates_per_s")
    for name, t, rate in rows:
        print("%s,%.4f,%.0f" % (name, t, rate))
    if len(results) == 2:
        same = (results["python"][0] == results["cython"][0]
                and np.array_equal(results["python"][1], results["cython"][1]))
        print("speedup,%.1f" % (rows[0][1] / rows[1][1]))
        print("bit_identical,%s" % same)
    else:
        print("cython kernel not built; only the Python backend was timed")


if __name__ == "__main__":
    main()
