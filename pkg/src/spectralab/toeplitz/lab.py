"""Toeplitz determinants of arc-indicator symbols at high precision."""

import time
from dataclasses import dataclass
from math import ceil, log, sin

from gmpy2 import mpq
from mpmath import nstr

from ..numeric import bf, context, gauss_legendre, to_hex
from ..numeric.angle import parse_real
from ..numeric.linalg import NotPositiveDefinite, lndet_with_floor


@dataclass(frozen=True)
class SymbolSpec:
    """Indicator of [-gamma, gamma].  Exactly one of ``text``, ``a``, ``value``.

    ``text`` is an expression such as "pi/7" evaluated at any precision;
    ``a`` is tan(gamma/2) as a rational; ``value`` is a fixed BigFloat.
    """
    text: str = None
    a: object = None
    value: object = None

    @classmethod
    def parse(cls, s):
        s = s.strip()
        if s.startswith("a="):
            return cls(a=mpq(s[2:]))
        return cls(text=s)

    def gamma(self, p):
        ctx = context(p)
        if self.a is not None:
            return 2 * ctx.atan(bf(mpq(self.a), p))
        if self.text is not None:
            g = parse_real(self.text, p)
        else:
            g = ctx.mpf(self.value)
        if not 0 < g <= ctx.pi + ctx.ldexp(1, -p + 4):
            raise ValueError("need 0 < gamma <= pi, got %s" % g)
        return min(g, +ctx.pi)

    def is_full_circle(self, p=128):
        ctx = context(p)
        return abs(self.gamma(p) - ctx.pi) <= ctx.ldexp(1, -p + 4)

    def label(self):
        if self.a is not None:
            return "a=%s" % self.a
        if self.text is not None:
            return self.text
        return to_hex(self.value)


@dataclass(frozen=True)
class ToeplitzResult:
    N: int
    p: int
    lndet: object
    pivot_floor: object
    elapsed: float


def fourier_coeffs(spec, k_max, p):
    """t_0 = gamma/pi, t_k = sin(k gamma)/(k pi)."""
    work = p + 16
    ctx = context(work)
    g = spec.gamma(work)
    out = context(p)
    ts = [out.mpf(g / ctx.pi)]
    for k in range(1, k_max + 1):
        ts.append(out.mpf(ctx.sin(k * g) / (k * ctx.pi)))
    if spec.is_full_circle(work):
        ts = [out.one] + [out.zero] * k_max
    return ts


def auto_precision(spec, N):
    g = float(spec.gamma(64))
    return max(256, ceil(1.5 * N * N * abs(log(sin(g / 2))) / log(2)) + 128)


def _lndet_at(spec, N, p):
    t = fourier_coeffs(spec, N - 1, p)
    mat = [[t[abs(i - j)] for j in range(N)] for i in range(N)]
    return lndet_with_floor(mat, p)


def lndet(spec, N, p="auto"):
    """ln det T_N by Cholesky; one precision doubling on pivot failure."""
    if N < 1:
        raise ValueError("N must be >= 1")
    t0 = time.perf_counter()
    p = auto_precision(spec, N) if p == "auto" else int(p)
    if spec.is_full_circle(p):
        ctx = context(p)
        return ToeplitzResult(N, p, ctx.zero, ctx.one, time.perf_counter() - t0)
    try:
        val, floor = _lndet_at(spec, N, p)
    except NotPositiveDefinite:
        p *= 2
        val, floor = _lndet_at(spec, N, p)
    return ToeplitzResult(N, p, val, floor, time.perf_counter() - t0)


def _vandermonde_weight(thetas, ctx):
    acc = ctx.one
    n = len(thetas)
    for i in range(n):
        for j in range(i + 1, n):
            acc *= 4 * ctx.sin((thetas[i] - thetas[j]) / 2) ** 2
    return acc


def _quad(g, N, n, p):
    ctx = context(p)
    xs, ws = gauss_legendre(n, p)
    th = [g * x for x in xs]
    w = [g * v for v in ws]
    acc = ctx.zero
    if N == 1:
        acc = ctx.fsum(w)
    elif N == 2:
        for i in range(n):
            for j in range(n):
                acc += w[i] * w[j] * _vandermonde_weight((th[i], th[j]), ctx)
    else:
        for i in range(n):
            for j in range(n):
                wij = w[i] * w[j]
                sij = 4 * ctx.sin((th[i] - th[j]) / 2) ** 2
                if sij == 0:
                    continue
                for k in range(n):
                    acc += wij * w[k] * sij * 4 * ctx.sin((th[i] - th[k]) / 2) ** 2 \
                        * 4 * ctx.sin((th[j] - th[k]) / 2) ** 2
    fact = 1
    for m in range(2, N + 1):
        fact *= m
    return acc / ((2 * ctx.pi) ** N * fact)


def quadrature_oracle(spec, N, p=128):
    """Direct N-fold Gauss-Legendre integral over [-gamma, gamma]^N (N <= 3).

    The integrand is a trigonometric polynomial, so the rule converges
    geometrically; nodes are doubled until two rules agree to 2^(-p/2).
    """
    if N not in (1, 2, 3):
        raise ValueError("quadrature oracle handles N <= 3")
    work = p + 16
    ctx = context(work)
    g = spec.gamma(work)
    tol = ctx.ldexp(1, -(p // 2) - 4)
    n = 2 * N + 2
    prev = _quad(g, N, n, work)
    while True:
        n *= 2
        cur = _quad(g, N, n, work)
        if abs(cur - prev) < tol or n > 256:
            break
        prev = cur
    return context(p).mpf(cur)


COLUMNS = ("N", "lndet", "res0", "res1", "res2", "res3")


def residual_table(spec, N_max, orders=3, N_min=1, p="auto"):
    """Rows (N, ln det, res0..res_orders).

    res0 subtracts the N^2 term, res1 also -(1/4) ln N and the constant,
    res2 also the N^-2 term, res3 also the N^-4 term.
    """
    from ..closed_forms.series import toeplitz_expansion

    if N_max > 64:
        raise ValueError("N_max <= 64 under the precision policy")
    if not 0 <= orders <= 3:
        raise ValueError("orders in 0..3")
    rows = []
    for N in range(N_min, N_max + 1):
        res = lndet(spec, N, p)
        q = res.p
        ctx = context(q)
        if spec.a is not None:
            exp = toeplitz_expansion(a=spec.a, max_g=2, p=q)
            terms = {k: c.evaluate(q) for k, c in exp.terms}
        else:
            terms = dict(toeplitz_expansion(spec.gamma(q), max_g=2, p=q))
        n = ctx.mpf(N)
        partial = [terms[2] * n * n,
                   -ctx.log(n) / 4 + terms[0],
                   terms[-2] / (n * n),
                   terms[-4] / n ** 4]
        acc = res.lndet
        out = []
        for k in range(orders + 1):
            acc = acc - partial[k]
            out.append(acc)
        rows.append((N, res.lndet, *out))
    return rows


def format_table(rows, digits=30):
    """CSV text with a fixed header; BigFloats in decimal at ``digits``."""
    ncol = len(rows[0]) if rows else len(COLUMNS)
    lines = [",".join(COLUMNS[:ncol])]
    for r in rows:
        lines.append(",".join([str(r[0])] + [nstr(v, digits, strip_zeros=False) for v in r[1:]]))
    return "\n".join(lines) + "\n"
