"""Gauss-Legendre rules at arbitrary precision."""

from functools import lru_cache

from .bigfloat import PrecisionError, context


def _legendre(n, x, one):
    p0, p1 = one, x
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    if n == 1:
        return p1, one
    return p1, n * (x * p1 - p0) / (x * x - 1)


@lru_cache(maxsize=64)
def gauss_legendre(n, p):
    """Nodes (ascending) and weights on [-1, 1]; Newton on P_n."""
    if n < 1:
        raise ValueError("need at least one node")
    work = p + 20
    ctx = context(work)
    tol = ctx.ldexp(1, -work + 8)
    half = []
    for i in range(1, n // 2 + 1):
        x = ctx.cos(ctx.pi * (i - ctx.mpf(1) / 4) / (n + ctx.mpf(1) / 2))
        for _ in range(100):
            val, dp = _legendre(n, x, ctx.one)
            dx = val / dp
            x -= dx
            if abs(dx) < tol:
                break
        else:
            raise PrecisionError("Gauss-Legendre Newton did not converge at %d bits" % p)
        _, dp = _legendre(n, x, ctx.one)
        half.append((x, 2 / ((1 - x * x) * dp * dp)))
    mid = []
    if n % 2:
        _, dp = _legendre(n, ctx.zero, ctx.one)
        mid = [(ctx.zero, 2 / (dp * dp))]
    pts = [(-x, w) for x, w in half] + mid + [(x, w) for x, w in reversed(half)]
    out = context(p)
    return tuple(out.mpf(x) for x, _ in pts), tuple(out.mpf(w) for _, w in pts)


def integrate(f, a, b, n, p):
    """Gauss-Legendre approximation of the integral of f over [a, b]."""
    ctx = context(p)
    xs, ws = gauss_legendre(n, p)
    a, b = ctx.mpf(a), ctx.mpf(b)
    h = (b - a) / 2
    m = (b + a) / 2
    return h * ctx.fsum(w * f(m + h * x) for x, w in zip(xs, ws))
