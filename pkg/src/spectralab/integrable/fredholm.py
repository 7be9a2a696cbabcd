"""Sine-kernel gap probability by two routes, and the universal W_2 forms.

Route A: Nystrom determinant of Id - lambda K on [0, s] with Gauss-Legendre
nodes, K(x, y) = sin(pi(x - y))/(pi(x - y)).

Route B: E = exp(int_0^{pi s} sigma(x)/x dx), sigma the solution of

    (x sigma'')^2 + 4 (x sigma' - sigma)(x sigma' - sigma + sigma'^2) = 0

with sigma ~ -lambda x/pi - lambda^2 x^2/pi^2.  Differentiating and dividing
by 2 sigma'' gives the branch-free third-order form

    x^2 sigma''' + x sigma'' + 4x A + 2x sigma'^2 + 4 A sigma' = 0,  A = x sigma' - sigma,

which is integrated by RK4 in u = ln x from x0 with power-series data.
"""

import time
from dataclasses import dataclass

from ..numeric import bf, context, gauss_legendre, lndet_posdef
from ..numeric.bigfloat import PrecisionError


class NystromNonConvergence(PrecisionError):
    pass


class OdeFailure(PrecisionError):
    pass


def _num(v, ctx):
    if isinstance(v, str) and "/" in v:
        a, b = v.split("/")
        return ctx.mpf(a) / ctx.mpf(b)
    return ctx.mpf(v)


def _sinc_pi(x, ctx):
    if x == 0:
        return ctx.one
    return ctx.sin(ctx.pi * x) / (ctx.pi * x)


def _check(s, lam, ctx):
    if not s > 0:
        raise ValueError("s must be positive")
    if not 0 <= lam <= 1:
        raise ValueError("lambda must lie in [0, 1]")


# -- route A -----------------------------------------------------------------

def nystrom_matrix(s, lam, m, p):
    ctx = context(p)
    xs, ws = gauss_legendre(m, p)
    h = s / 2
    nodes = [h * (x + 1) for x in xs]
    rw = [ctx.sqrt(h * w) for w in ws]
    return [[(1 if i == j else 0) - lam * rw[i] * rw[j] * _sinc_pi(nodes[i] - nodes[j], ctx)
             for j in range(m)] for i in range(m)]


def fredholm_sine(s, lam=1, m=40, p=128, check=True):
    """det(Id - lambda K_sine) on [0, s] by Nystrom with m nodes.

    With ``check`` the same determinant at m + 10 nodes must agree to
    2^(-p/2); otherwise NystromNonConvergence.
    """
    if m < 20:
        raise ValueError("need m >= 20 nodes")
    work = p + 16
    ctx = context(work)
    s, lam = _num(s, ctx), _num(lam, ctx)
    _check(s, lam, ctx)
    if lam == 0:
        return context(p).one
    E = ctx.exp(lndet_posdef(nystrom_matrix(s, lam, m, work), work))
    if check:
        E2 = ctx.exp(lndet_posdef(nystrom_matrix(s, lam, m + 10, work), work))
        if abs(E - E2) > ctx.ldexp(1, -p // 2) * max(abs(E), ctx.ldexp(1, -p // 2)):
            raise NystromNonConvergence("m = %d and m + 10 disagree by %s" % (m, ctx.nstr(abs(E - E2), 5)))
    return context(p).mpf(E)


# -- route B -----------------------------------------------------------------

def sigma_series(lam, n, ctx):
    """a_1 .. a_n of sigma = sum a_k x^k, from the third-order form."""
    a = [ctx.zero] * (n + 2)
    a[1] = -lam / ctx.pi
    for k in range(1, n):
        acc = 4 * (k - 2) * a[k - 1] if k >= 2 else ctx.zero
        for i in range(1, k + 1):
            j = k + 1 - i
            acc += 2 * i * j * a[i] * a[j] + 4 * (i - 1) * j * a[i] * a[j]
        a[k + 1] = -acc / ((k + 1) * k * k)
    return a[:n + 1]


def _series_state(a, x, ctx):
    s0 = ctx.fsum(c * x ** k for k, c in enumerate(a))
    s1 = ctx.fsum(k * c * x ** (k - 1) for k, c in enumerate(a) if k >= 1)
    s2 = ctx.fsum(k * (k - 1) * c * x ** (k - 2) for k, c in enumerate(a) if k >= 2)
    integral = ctx.fsum(c * x ** k / k for k, c in enumerate(a) if k >= 1)
    return [s0, s1, s2, integral]


def sigma_residual(x, y):
    """The squared form at (x, sigma, sigma', sigma'')."""
    s0, s1, s2 = y[0], y[1], y[2]
    A = x * s1 - s0
    return (x * s2) ** 2 + 4 * A * (A + s1 * s1)


def _rhs(u, y, ctx):
    # d/du = x d/dx with x = e^u; y = (sigma, sigma', sigma'', int sigma/x)
    x = ctx.exp(u)
    s0, s1, s2, _ = y
    A = x * s1 - s0
    s3 = -(x * s2 + 4 * x * A + 2 * x * s1 * s1 + 4 * A * s1) / (x * x)
    return [x * s1, x * s2, x * s3, s0]


def _rk4(f, u, y, h, ctx):
    k1 = f(u, y, ctx)
    k2 = f(u + h / 2, [a + h / 2 * b for a, b in zip(y, k1)], ctx)
    k3 = f(u + h / 2, [a + h / 2 * b for a, b in zip(y, k2)], ctx)
    k4 = f(u + h, [a + h * b for a, b in zip(y, k3)], ctx)
    return [a + h / 6 * (b + 2 * c + 2 * d + e) for a, b, c, d, e in zip(y, k1, k2, k3, k4)]


@dataclass
class SigmaRun:
    E: object
    log_E: object
    steps: int
    x0: object
    max_residual: object     # of the squared form along the path
    elapsed: float


def sigma_ode_solve(s, lam=1, p=128, x0="1e-3", steps=None, n_series=24):
    """Route B with diagnostics.  ``steps`` defaults to 400 per unit of ln x."""
    t0 = time.perf_counter()
    work = p + 16
    ctx = context(work)
    s, lam = _num(s, ctx), _num(lam, ctx)
    _check(s, lam, ctx)
    x0 = _num(x0, ctx)
    X = ctx.pi * s
    if lam == 0:
        return SigmaRun(context(p).one, context(p).zero, 0, x0, ctx.zero, time.perf_counter() - t0)
    a = sigma_series(lam, n_series, ctx)
    if X <= x0:
        y = _series_state(a, X, ctx)
        return SigmaRun(context(p).mpf(ctx.exp(y[3])), y[3], 0, x0, ctx.zero, time.perf_counter() - t0)
    y = _series_state(a, x0, ctx)
    u0, u1 = ctx.log(x0), ctx.log(X)
    n = steps or int(ctx.ceil(400 * (u1 - u0)))
    h = (u1 - u0) / n
    worst = abs(sigma_residual(x0, y))
    u = u0
    for i in range(n):
        y = _rk4(_rhs, u, y, h, ctx)
        u = u0 + (i + 1) * h
        if not all(ctx.isfinite(v) for v in y):
            raise OdeFailure("sigma blew up at x = %s; reduce the step" % ctx.nstr(ctx.exp(u), 6))
        worst = max(worst, abs(sigma_residual(ctx.exp(u), y)))
    return SigmaRun(context(p).mpf(ctx.exp(y[3])), y[3], n, x0, worst, time.perf_counter() - t0)


def sigma_ode_gap(s, lam=1, p=128, **kw):
    return sigma_ode_solve(s, lam, p, **kw).E


def fredholm_csv(s_values, lam=1, m=40, p=128):
    """Rows s,E_nystrom,E_ode."""
    ctx = context(p)
    lines = ["s,E_nystrom,E_ode"]
    for s in s_values:
        a = fredholm_sine(s, lam, m, p)
        b = sigma_ode_gap(s, lam, p)
        lines.append("%s,%s,%s" % (s, ctx.nstr(a, 20), ctx.nstr(b, 20)))
    return "\n".join(lines) + "\n"


# -- universal two-point functions -----------------------------------------

ENSEMBLES = ("hermitian", "real_symmetric", "quaternionic")


def _int_sinc(r, scale, ctx, nodes=24):
    """int_0^r sin(c pi s)/(c pi s) ds, panels of width 1/(2c)."""
    if r == 0:
        return ctx.zero
    xs, ws = gauss_legendre(nodes, ctx.prec)
    width = ctx.one / (2 * scale)
    panels = max(1, int(ctx.ceil(r / width)))
    hw = r / panels / 2
    total = ctx.zero
    for k in range(panels):
        mid = (2 * k + 1) * hw
        total += hw * ctx.fsum(w * _sinc_pi(scale * (mid + hw * x), ctx) for x, w in zip(xs, ws))
    return total


def _dsinc(r, scale, ctx):
    """d/dr sin(c pi r)/(c pi r)."""
    if r == 0:
        return ctx.zero
    z = scale * ctx.pi * r
    return (z * ctx.cos(z) - ctx.sin(z)) / (z * r)


# int_0^oo sin(pi s)/(pi s) ds
SINC_HALF_LINE = "1/2"


def sinc_tail(R, ctx, terms=12):
    """int_R^oo sin(pi s)/(pi s) ds by its asymptotic series (R large)."""
    x = ctx.pi * R
    c_acc = ctx.zero
    s_acc = ctx.zero
    f = ctx.one
    for k in range(terms):
        c_acc += (-1) ** k * ctx.factorial(2 * k) / x ** (2 * k)
        s_acc += (-1) ** k * ctx.factorial(2 * k + 1) / x ** (2 * k)
    return (ctx.cos(x) / x * c_acc + ctx.sin(x) / (x * x) * s_acc) * f / ctx.pi


def verify_sinc_half_line(p=128, R=400):
    """|int_0^R sinc + tail(R) - 1/2| by quadrature; small when the constant holds."""
    ctx = context(p + 16)
    val = _int_sinc(ctx.mpf(R), 1, ctx) + sinc_tail(ctx.mpf(R), ctx)
    return context(p).mpf(abs(val - ctx.mpf(1) / 2))


def universal_w2(r, ensemble="hermitian", p=128):
    ctx = context(p + 16)
    r = abs(_num(r, ctx))
    if ensemble == "hermitian":
        out = 1 - _sinc_pi(r, ctx) ** 2
    elif ensemble == "real_symmetric":
        tail = ctx.mpf(1) / 2 - _int_sinc(r, 1, ctx)
        out = 1 - _sinc_pi(r, ctx) ** 2 - tail * _dsinc(r, 1, ctx)
    elif ensemble == "quaternionic":
        out = 1 - _sinc_pi(2 * r, ctx) ** 2 + _int_sinc(r, 2, ctx) * _dsinc(r, 2, ctx)
    else:
        raise ValueError("ensemble must be one of %s" % ", ".join(ENSEMBLES))
    return context(p).mpf(out)


def fig8_table(r_max=3, step="1/20", p=64):
    """CSV rows r,W2_herm,W2_real,W2_quat on a uniform grid."""
    ctx = context(p)
    r_max, step = _num(r_max, ctx), _num(step, ctx)
    if not step > 0:
        raise ValueError("step must be positive")
    n = int(ctx.floor(r_max / step + ctx.mpf("1e-9")))
    lines = ["r,W2_herm,W2_real,W2_quat"]
    for i in range(n + 1):
        r = i * step
        vals = [universal_w2(r, e, p) for e in ENSEMBLES]
        lines.append(",".join([ctx.nstr(r, 10)] + [ctx.nstr(v, 15) for v in vals]))
    return "\n".join(lines) + "\n"
