"""Equilibrium densities of the catalog models and their normalization check."""

from ..numeric import bf, context, gauss_legendre
from ..numeric.bigfloat import PrecisionError

MODELS = ("semicircle", "exponential", "gaussian_plus", "toeplitz")


class DensityModel:
    """Density on [lo, hi] with edge kinds ('soft' ~ sqrt, 'hard' ~ 1/sqrt)."""

    def __init__(self, name, lo, hi, edges, formula, params, p):
        self.name = name
        self.lo, self.hi = lo, hi
        self.edges = edges
        self._f = formula
        self.params = params
        self.p = p

    def __call__(self, x):
        ctx = context(self.p)
        x = ctx.mpf(x)
        if x <= self.lo or x >= self.hi:
            return ctx.zero
        return self._f(x)

    def support(self):
        return self.lo, self.hi

    @classmethod
    def make(cls, name, p=128, **params):
        ctx = context(p)
        if name == "semicircle":
            T = bf(params.get("T", 1), p)
            e = 2 * ctx.sqrt(T)
            return cls(name, -e, e, ("soft", "soft"),
                       lambda x: ctx.sqrt(4 * T - x * x) / (2 * ctx.pi * T), {"T": T}, p)
        if name == "exponential":
            T = bf(params.get("T", 1), p)
            return cls(name, ctx.zero, 4 * T, ("hard", "soft"),
                       lambda x: ctx.sqrt((4 * T - x) / (4 * x)) / (T * ctx.pi), {"T": T}, p)
        if name == "gaussian_plus":
            T = bf(params.get("T", 1), p)
            u = ctx.sqrt(T / 3)
            return cls(name, ctx.zero, 4 * u, ("hard", "soft"),
                       lambda x: (x + 2 * u) * ctx.sqrt((4 * u - x) / x) / (2 * ctx.pi * T),
                       {"T": T}, p)
        if name == "toeplitz":
            g = params["gamma"]
            g = g if hasattr(g, "_mpf_") else bf(g, p)
            g = ctx.mpf(g)
            a = ctx.tan(g / 2)
            c = ctx.cos(g / 2)
            return cls(name, -a, a, ("hard", "hard"),
                       lambda x: 1 / (ctx.pi * c * (1 + x * x) * ctx.sqrt(a * a - x * x)),
                       {"gamma": g}, p)
        raise KeyError("unknown density model %r (known: %s)" % (name, ", ".join(MODELS)))


def _mass(model, n, p):
    ctx = context(p)
    xs, ws = gauss_legendre(n, p)
    lo, hi = model.lo, model.hi
    mid = (lo + hi) / 2
    acc = ctx.zero
    # x = edge +/- u^2 on each half: the integrand 2u*rho is smooth for both edge kinds
    for edge, sgn in ((lo, 1), (hi, -1)):
        U = ctx.sqrt(abs(mid - edge))
        h = U / 2
        for x, w in zip(xs, ws):
            u = h * (x + 1)
            acc += w * h * 2 * u * model._f(edge + sgn * u * u)
    return acc


def edge_exponent(model, side, p):
    """Local exponent e in rho ~ |x - edge|^e, from two nearby samples."""
    ctx = context(p)
    edge, sgn = (model.lo, 1) if side == 0 else (model.hi, -1)
    width = model.hi - model.lo
    d1 = width * ctx.ldexp(1, -30)
    d2 = d1 / 2
    r1 = model._f(edge + sgn * d1)
    r2 = model._f(edge + sgn * d2)
    return ctx.log(r1 / r2) / ctx.log(2)


def density_check(model, p=None, n_max=2048):
    """Total mass within 2^(-p/2) of 1 and edge classification."""
    p = p or model.p
    ctx = context(p)
    tol = ctx.ldexp(1, -p // 2)
    n = 16
    prev = _mass(model, n, p)
    while True:
        n *= 2
        if n > n_max:
            raise PrecisionError("density quadrature did not converge by %d nodes" % n_max)
        cur = _mass(model, n, p)
        if abs(cur - prev) < tol:
            break
        prev = cur
    edges = []
    for side in (0, 1):
        e = edge_exponent(model, side, p)
        kind = "soft" if abs(e - 0.5) < 0.05 else "hard" if abs(e + 0.5) < 0.05 else "other"
        edges.append({"edge": model.lo if side == 0 else model.hi, "exponent": e,
                      "kind": kind, "expected": model.edges[side]})
    return {"model": model.name, "mass": cur, "mass_ok": abs(cur - 1) < tol,
            "nodes": n, "edges": edges,
            "edges_ok": all(e["kind"] == e["expected"] for e in edges)}
