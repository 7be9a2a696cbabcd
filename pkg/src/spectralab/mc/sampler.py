"""Metropolis sampling of log-gas eigenvalue measures and density comparison.

Target log-density on the model's domain:

    2 sum_{i<j} ln|l_i - l_j| - (N/T) sum_i V(l_i)

Proposals are single-coordinate Gaussian moves; moves leaving the domain are
rejected.  Each chain draws from its own PCG64 stream seeded by a splitmix64
expansion of the user seed, in fixed-size blocks, so the compiled and the
Python kernel see the same numbers and results do not depend on threading.
"""

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from ..curves.density import DensityModel
from .kernel import BACKEND, run_sweeps

MODELS = ("gaussian", "exponential", "gaussian_plus", "toeplitz")
_MASK = (1 << 64) - 1
BLOCK = 256      # sweeps per random block
TUNE_CHUNK = 50  # sweeps between proposal-scale updates during burn-in


def splitmix64(seed, n):
    """First n outputs of splitmix64 started at ``seed``."""
    out = []
    state = seed & _MASK
    for _ in range(n):
        state = (state + 0x9E3779B97F4A7C15) & _MASK
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        out.append(z ^ (z >> 31))
    return out


@dataclass(frozen=True)
class ModelSpec:
    model: str
    T: float = 1.0
    gamma: str = None   # angle expression for the toeplitz model

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError("unknown model %r (known: %s)" % (self.model, ", ".join(MODELS)))
        if not self.T > 0:
            raise ValueError("T must be positive")
        if self.model == "toeplitz":
            g = self.gamma_value()
            if not 0 < g < math.pi:
                raise ValueError("need 0 < gamma < pi")

    def gamma_value(self):
        from ..numeric.angle import parse_real
        return float(parse_real(str(self.gamma), 64))

    def domain(self):
        if self.model == "gaussian":
            return -math.inf, math.inf
        if self.model in ("exponential", "gaussian_plus"):
            return 0.0, math.inf
        a = math.tan(self.gamma_value() / 2)
        return -a, a

    def potential(self, N):
        """(kernel potential id, coefficient in front of sum V)."""
        if self.model in ("gaussian", "gaussian_plus"):
            return 0, N / self.T
        if self.model == "exponential":
            return 1, N / self.T
        return 2, float(N)

    def density(self, p=64):
        if self.model == "gaussian":
            return DensityModel.make("semicircle", p, T=self.T)
        if self.model == "toeplitz":
            from ..numeric.angle import parse_real
            return DensityModel.make("toeplitz", p, gamma=parse_real(str(self.gamma), p))
        return DensityModel.make(self.model, p, T=self.T)


@dataclass(frozen=True)
class ChainConfig:
    N: int
    sweeps: int
    burn_in: int
    thin: int = 1
    scale: float = None   # None: tuned during burn-in
    seed: int = 0
    chains: int = 1

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if not self.sweeps > self.burn_in >= 0:
            raise ValueError("need sweeps > burn_in >= 0")
        if self.thin < 1 or self.chains < 1:
            raise ValueError("thin and chains must be >= 1")
        if self.scale is not None and not self.scale > 0:
            raise ValueError("scale must be positive")


@dataclass
class SampleSet:
    model: ModelSpec
    config: ChainConfig
    values: np.ndarray      # shape (chains, retained, N)
    acceptance: float
    scales: list
    backend: str

    def flat(self):
        return self.values.reshape(-1)


def _initial(model, N):
    dens = model.density()
    lo, hi = float(dens.lo), float(dens.hi)
    return np.array([lo + (hi - lo) * (i + 0.5) / N for i in range(N)], dtype=np.float64)


class _Stream:
    def __init__(self, seed, N):
        self.rng = np.random.Generator(np.random.PCG64(seed))
        self.N = N

    def block(self, nsweeps):
        m = nsweeps * self.N
        return self.rng.standard_normal(m), self.rng.random(m)


def _chain(model, cfg, c, seed):
    N = cfg.N
    vkind, coef = model.potential(N)
    lo, hi = model.domain()
    x = _initial(model, N)
    stream = _Stream(seed, N)
    dens = model.density()
    scale = cfg.scale or float(dens.hi - dens.lo) / N
    empty = np.zeros(0)
    left = cfg.burn_in
    while left > 0:
        b = min(TUNE_CHUNK, left)
        nrm, uni = stream.block(b)
        a, _ = run_sweeps(x, nrm, uni, scale, vkind, coef, lo, hi, b, 0, empty, 0)
        if cfg.scale is None:
            rate = a / (b * N)
            if rate < 0.3:
                scale *= 0.8
            elif rate > 0.5:
                scale *= 1.25
        left -= b
    prod = cfg.sweeps - cfg.burn_in
    n_ret = prod // cfg.thin
    out = np.empty(n_ret * N, dtype=np.float64)
    accepted = 0
    pos = 0
    done = 0
    while done < prod:
        # blocks are a multiple of thin so stored configurations stay aligned
        b = min(BLOCK * cfg.thin, prod - done)
        nrm, uni = stream.block(b)
        a, st = run_sweeps(x, nrm, uni, scale, vkind, coef, lo, hi, b, cfg.thin, out, pos)
        accepted += a
        pos += st * N
        done += b
    return out[: pos].reshape(-1, N), accepted, scale


def sample(model, config, workers=1):
    """Run ``config.chains`` chains; pooled in chain order."""
    seeds = splitmix64(config.seed, config.chains)
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            res = list(ex.map(lambda c: _chain(model, config, c, seeds[c]), range(config.chains)))
    else:
        res = [_chain(model, config, c, seeds[c]) for c in range(config.chains)]
    m = min(r[0].shape[0] for r in res)
    values = np.stack([r[0][:m] for r in res])
    prod = (config.sweeps - config.burn_in) * config.N * config.chains
    acc = sum(r[1] for r in res) / prod
    return SampleSet(model, config, values, acc, [r[2] for r in res], BACKEND)


class Histogram:
    """Counts over fixed bins; heights integrate to one."""

    def __init__(self, edges, counts):
        self.edges = np.asarray(edges, dtype=np.float64)
        self.counts = np.asarray(counts, dtype=np.int64)
        self.total = int(self.counts.sum())
        self.widths = np.diff(self.edges)
        self.heights = self.counts / (self.total * self.widths)

    def mass(self):
        """Exact total mass, sum of counts/total."""
        return sum((Fraction(int(c), self.total) for c in self.counts), Fraction(0))

    @classmethod
    def of(cls, values, lo, hi, bins):
        edges = np.linspace(lo, hi, bins + 1)
        counts, _ = np.histogram(values, bins=edges)
        return cls(edges, counts)


def _bin_masses(dens, edges):
    import mpmath
    ctx = mpmath.mp.clone()
    ctx.prec = 64
    f = dens
    lo, hi = float(dens.lo), float(dens.hi)
    out = []
    for a, b in zip(edges[:-1], edges[1:]):
        a, b = max(a, lo), min(b, hi)
        out.append(float(ctx.quad(f, [a, b])) if b > a else 0.0)
    return np.array(out)


def edge_estimate(values, side, kind, levels=None):
    """Endpoint from low-rank order statistics.

    Near an edge e the tail mass behaves like C |x - e|^k with k = 3/2 (soft)
    or 1/2 (hard), so the empirical quantile x_q is linear in q^(1/k); a least
    squares line through several small q is extrapolated to q = 0.
    """
    levels = levels or [0.01 * j for j in range(2, 13)]
    v = np.sort(values)
    qs = np.array(levels)
    xs = np.quantile(v, qs if side == 0 else 1 - qs)
    k = 1.5 if kind == "soft" else 0.5
    u = qs ** (1.0 / k)
    A = np.vstack([np.ones_like(u), u]).T
    coef, *_ = np.linalg.lstsq(A, xs, rcond=None)
    return float(coef[0])


def compare_density(samples, model=None, bins=60):
    """L1 and sup distance of the histogram to the analytic density, plus
    endpoint estimates."""
    vals = samples.flat() if isinstance(samples, SampleSet) else np.asarray(samples).reshape(-1)
    model = model or samples.model
    if vals.size < 10_000:
        raise ValueError("need at least 1e4 retained values")
    dens = model.density()
    lo, hi = float(dens.lo), float(dens.hi)
    h_lo, h_hi = min(lo, float(vals.min())), max(hi, float(vals.max()))
    hist = Histogram.of(vals, h_lo, h_hi, bins)
    masses = _bin_masses(dens, hist.edges)
    emp = hist.counts / hist.total
    l1 = float(np.abs(emp - masses).sum())
    analytic = masses / hist.widths
    sup = float(np.abs(hist.heights - analytic).max())
    ends = [edge_estimate(vals, 0, dens.edges[0]), edge_estimate(vals, 1, dens.edges[1])]
    width = hi - lo
    return {"L1": l1, "sup": sup, "endpoints": ends, "support": [lo, hi],
            "endpoint_errors": [abs(ends[0] - lo) / width, abs(ends[1] - hi) / width],
            "histogram": hist, "analytic": analytic}


def integrated_autocorrelation(series, c=5.0):
    """Sokal's self-consistent window estimate of tau = 1 + 2 sum rho_k."""
    x = np.asarray(series, dtype=np.float64)
    n = x.size
    x = x - x.mean()
    var = float(x @ x) / n
    if var == 0.0:
        return 1.0
    m = 1 << (2 * n - 1).bit_length()
    f = np.fft.rfft(x, m)
    acf = np.fft.irfft(f * np.conj(f), m)[:n] / (n * var)
    tau = 1.0
    for k in range(1, n):
        tau += 2.0 * acf[k]
        if k >= c * tau:
            break
    return max(tau, 1.0)


def positive_fraction(N, config, T=1.0, workers=1):
    """Fraction of Gaussian-model configurations with every coordinate > 0."""
    if N > 4:
        raise ValueError("positive_fraction supports N <= 4")
    if config.N != N:
        config = ChainConfig(N, config.sweeps, config.burn_in, config.thin, config.scale,
                             config.seed, config.chains)
    s = sample(ModelSpec("gaussian", T), config, workers)
    ind = (s.values > 0).all(axis=2).astype(np.float64)   # (chains, retained)
    n = ind.size
    p = float(ind.mean())
    taus = [integrated_autocorrelation(row) for row in ind]
    tau = float(np.mean(taus))
    hits = int(ind.sum())
    pe = p
    if hits < 25:
        # Agresti-Coull centre keeps the error bar away from zero
        pe = (hits + 2) / (n + 4)
    se = math.sqrt(pe * (1 - pe) / n * tau)
    return {"N": N, "T": T, "estimate": p, "se": se, "tau": tau, "positives": hits,
            "samples": n, "widened": hits < 25, "acceptance": s.acceptance}


def histogram_csv(result):
    hist, ana = result["histogram"], result["analytic"]
    lines = ["bin_lo,bin_hi,height,analytic"]
    for a, b, h, f in zip(hist.edges[:-1], hist.edges[1:], hist.heights, ana):
        lines.append("%.12g,%.12g,%.12g,%.12g" % (a, b, h, f))
    return "\n".join(lines) + "\n"


def summary_json(samples, result):
    doc = {"model": asdict(samples.model), "config": asdict(samples.config),
           "L1": result["L1"], "sup": result["sup"], "endpoints": result["endpoints"],
           "support": result["support"], "acceptance": samples.acceptance,
           "backend": samples.backend}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
