"""One-cut equilibrium endpoints for a polynomial potential.

With x = c + r cos(theta) on the cut [a, b] = [c - r, c + r], the two
moment conditions are

    (1/2pi) int_0^pi V'(c + r cos t) dt             = 0
    (1/2pi) int_0^pi (c + r cos t) V'(c + r cos t) dt = T

Both integrands are trigonometric polynomials, so Gauss-Chebyshev with
enough nodes is exact and Newton runs at the requested precision.  The
density is then rho(x) = M(x) sqrt((b - x)(x - a)) / (2 pi T), with M the
polynomial part of V'(x) / sqrt((x - a)(x - b)) at infinity.
"""

from dataclasses import dataclass
from math import comb

from ..numeric import Poly, bf, context


class OneCutError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PotentialSpec:
    V: Poly
    T: object
    hard_edges: tuple = ()

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError("temperature T must be positive")


def _moments(dV, c, r, nodes, ctx):
    """(f1, f2) and their derivatives in (c, r)."""
    d2V = dV.derivative()
    n = len(nodes)
    f1 = f2 = j11 = j12 = j21 = j22 = ctx.zero
    for ct in nodes:
        x = c + r * ct
        v = dV(x)
        w = d2V(x)
        f1 += v
        f2 += x * v
        j11 += w
        j12 += w * ct
        j21 += v + x * w
        j22 += (v + x * w) * ct
    s = 1 / (2 * ctx.mpf(n))  # (1/2pi) * (pi / n)
    return (f1 * s, f2 * s), ((j11 * s, j12 * s), (j21 * s, j22 * s))


def _seed(V, T, ctx):
    d = V.degree
    lead = abs(ctx.mpf(V.lead))
    if d < 2:
        raise OneCutError("potential must have degree >= 2")
    # leading-term balance for the second condition at c = 0
    k = d if d % 2 == 0 else d + 1
    scale = d * lead * comb(k, k // 2) / ctx.mpf(2) ** (k + 1)
    r = (ctx.mpf(T) / scale) ** (ctx.one / d)
    # centre at the real critical point of V with the lowest value
    dV = V.derivative()
    best = ctx.zero
    try:
        import numpy as np
        roots = np.roots([float(cf) for cf in reversed(dV.c)])
        real = [ctx.mpf(float(z.real)) for z in roots if abs(z.imag) < 1e-9]
        if real:
            best = min(real, key=lambda x: V(x))
    except (ValueError, TypeError):
        pass
    return best, r


def one_cut_solve(pot, p=128, max_iter=200):
    """Return (a, b, M) with M a Poly over BigFloats at p bits."""
    if pot.hard_edges:
        raise OneCutError("hard-edge one-cut problems are not handled by this solver")
    work = p + 32
    ctx = context(work)
    V = Poly([bf(c, work) for c in pot.V.c])
    T = bf(pot.T, work)
    dV = V.derivative()
    deg = max(dV.degree + 1, 1)
    n = deg + 2
    nodes = [ctx.cos(ctx.pi * (2 * k - 1) / (2 * n)) for k in range(1, n + 1)]
    c, r = _seed(V, T, ctx)
    tol = ctx.ldexp(1, -(p // 2) - 8)
    for _ in range(max_iter):
        (f1, f2), ((a11, a12), (a21, a22)) = _moments(dV, c, r, nodes, ctx)
        f2 -= T
        det = a11 * a22 - a12 * a21
        if det == 0 or not ctx.isfinite(det):
            break
        dc = (f1 * a22 - f2 * a12) / det
        dr = (a11 * f2 - a21 * f1) / det
        lam = ctx.one
        # damp so the radius stays positive
        while r - lam * dr <= 0 and lam > ctx.ldexp(1, -30):
            lam /= 2
        c -= lam * dc
        r -= lam * dr
        if abs(dc) + abs(dr) < ctx.ldexp(1, -work + 16) * (1 + abs(c) + abs(r)):
            break
    else:
        raise OneCutError("no one-cut solution found from default seed")
    (f1, f2), _ = _moments(dV, c, r, nodes, ctx)
    out = context(p)
    res = max(abs(f1), abs(f2 - T))
    if not (r > 0) or not res < tol:
        raise OneCutError("no one-cut solution found from default seed")
    a, b = c - r, c + r
    M = _m_poly(dV, a, b, ctx)
    return out.mpf(a), out.mpf(b), Poly([out.mpf(v) for v in M.c])


def _m_poly(dV, a, b, ctx):
    """Polynomial part of V'(x) (1 - s/x + q/x^2)^(-1/2) / x."""
    d = dV.degree
    s, q = a + b, a * b
    # series of (1 + u)^(-1/2), u = -s w + q w^2 in w = 1/x, to order d
    ser = [ctx.zero] * (d + 1)
    ser[0] = ctx.one
    u = [ctx.zero] * (d + 1)
    if d >= 1:
        u[1] = -s
    if d >= 2:
        u[2] = q
    upow = [ctx.one] + [ctx.zero] * d
    coef = ctx.one
    for k in range(1, d + 1):
        coef = coef * (ctx.mpf(-1) / 2 - (k - 1)) / k
        nxt = [ctx.zero] * (d + 1)
        for i, v in enumerate(upow):
            if v == 0:
                continue
            for j, w in enumerate(u):
                if i + j <= d and w != 0:
                    nxt[i + j] += v * w
        upow = nxt
        for i in range(d + 1):
            ser[i] += coef * upow[i]
    # V'(x) * sum ser[j] x^(-j-1): keep nonnegative powers
    M = [ctx.zero] * d if d >= 1 else []
    for i, cv in enumerate(dV.c):
        for j in range(d + 1):
            e = i - j - 1
            if e >= 0:
                M[e] += cv * ser[j]
    return Poly(M)


def implied_density(a, b, M, T, x, p):
    ctx = context(p)
    x = ctx.mpf(x)
    if not a < x < b:
        return ctx.zero
    T = ctx.mpf(T) if hasattr(T, "_mpf_") else bf(T, p)
    return M(x) * ctx.sqrt((b - x) * (x - a)) / (2 * ctx.pi * T)
