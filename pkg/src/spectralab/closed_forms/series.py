"""Large-N expansions: Barnes G, the Gaussian partition function, arc
Toeplitz determinants and the positive-eigenvalue probability."""

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from gmpy2 import mpq

from ..numeric import Poly, bernoulli, bf, context
from ..numeric.rational import rational_sqrt
from .constexpr import LN2PI, ZETA1, AsymptoticSeries, ConstantExpr
from .oracles import _superfactorial, fg_oracle


def barnes_series(m):
    """ln prod_{i<N} i!  with the g-sum kept for g = 2 .. m + 1."""
    terms = [(2, mpq(-3, 4)), (1, ConstantExpr.basis(LN2PI, mpq(1, 2))),
             (0, ConstantExpr.basis(ZETA1))]
    for g in range(2, m + 2):
        terms.append((2 - 2 * g, bernoulli(2 * g) / (2 * g * (2 * g - 2))))
    return AsymptoticSeries("N", terms, {2: mpq(1, 2), 0: mpq(-1, 12)})


def stirling_series(m):
    """ln N!  with m terms of the Bernoulli sum."""
    terms = [(1, mpq(-1)), (0, ConstantExpr.basis(LN2PI, mpq(1, 2)))]
    for k in range(1, m + 1):
        terms.append((1 - 2 * k, bernoulli(2 * k) / (2 * k * (2 * k - 1))))
    return AsymptoticSeries("N", terms, {1: 1, 0: mpq(1, 2)})


def gaussian_lnz_coefficient(k, T=1):
    """Z^(k), the coefficient of N^-k in ln Z_N (Gaussian, after N^(N+5/12))."""
    T = mpq(T)
    if k == -2:
        return ConstantExpr.log_symbol("T", T, mpq(1, 2)) - mpq(3, 4)
    if k == -1:
        return ConstantExpr.basis(LN2PI) - 1
    if k == 0:
        return ConstantExpr.basis(LN2PI, mpq(1, 2)) + ConstantExpr.basis(ZETA1)
    if k % 2 == 0:
        j = k // 2
        return ConstantExpr.rational(bernoulli(2 * j + 2) / (2 * j * (2 * j + 2)))
    j = (k - 1) // 2
    return ConstantExpr.rational(bernoulli(2 * j + 2) / ((2 * j + 1) * (2 * j + 2)))


def gaussian_lnz_series(kmax, T=1):
    """ln Z_N for the Gaussian model down to N^-kmax."""
    terms = [(-k, gaussian_lnz_coefficient(k, T)) for k in range(-2, kmax + 1)]
    return AsymptoticSeries("N", terms, {1: 1, 0: mpq(5, 12)})


@dataclass(frozen=True)
class BarnesResult:
    N: int
    exact_integer: int     # prod_{i=1}^{N-1} i!
    exact_log: object      # its logarithm at p bits
    series: AsymptoticSeries
    series_value: object
    residual: object       # exact - series


def stirling_barnes(N, m, p=256):
    if N < 2:
        raise ValueError("N must be >= 2")
    ctx = context(p + 32)
    ex = _superfactorial(N)
    exact = ctx.log(ex)
    ser = barnes_series(m)
    val = ser.evaluate(N, p + 32)
    out = context(p)
    return BarnesResult(N, ex, out.mpf(exact), ser, out.mpf(val), out.mpf(exact - val))


def gaussian_lnz_reconstruction(N, T=1, p=256):
    """ln Z_N rebuilt from the N^2, N ln N, N, ln N and constant terms of the
    Gaussian expansion, plus the exact remainders of the two factorial
    series it is assembled from (ln N! and ln prod i!)."""
    work = p + 32
    ctx = context(work)
    head = gaussian_lnz_series(0, T).evaluate(N, work)
    lnfact = ctx.log(factorial(N))
    stir_tail = lnfact - stirling_series(0).evaluate(N, work)
    barnes_tail = ctx.log(_superfactorial(N)) - barnes_series(0).evaluate(N, work)
    return context(p).mpf(head + stir_tail + barnes_tail)


# ---------------------------------------------------------------- Toeplitz

PYTHAGOREAN = tuple(mpq(n, d) for n, d in
                    ((3, 4), (5, 12), (8, 15), (7, 24), (20, 21), (9, 40), (12, 35), (11, 60)))


def _engine_fe(a, h):
    from ..curves import catalog
    from ..tr import free_energy
    return free_energy(catalog("toeplitz_arc", {"a": a}), h)


def _interpolate(xs, ys):
    """Lagrange interpolation over the rationals, as a Poly."""
    out = Poly([0])
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = Poly([1])
        den = mpq(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Poly([-xj, 1])
                den *= xi - xj
        out = out + basis * (yi / den)
    return out


class EngineMismatch(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def _arc_free_energy_poly(h, engine=None):
    """F^(h) of the arc curve as an exact polynomial in A = a^2.

    Degree h - 1, fixed from h points and confirmed on one more.
    """
    fe = engine or _engine_fe
    pts = PYTHAGOREAN[: h + 1]
    A = [a * a for a in pts]
    F = [mpq(fe(a, h)) for a in pts]
    P = _interpolate(A[:h], F[:h])
    if P(A[h]) != F[h]:
        raise EngineMismatch("F^(%d) is not a polynomial of degree %d in a^2" % (h, h - 1))
    return P


def selberg_constant(g):
    """4 (1 - 2^(-2g-2)) B_(2g+2) / (2g (2g+2))."""
    return 4 * (1 - mpq(1, 2 ** (2 * g + 2))) * bernoulli(2 * g + 2) / (2 * g * (2 * g + 2))


def toeplitz_coefficient_paper(g, a):
    """Printed N^(-2g) coefficients for g = 1, 2 (a exact or BigFloat)."""
    a2 = a * a
    if g == 1:
        return (2 * a2 - 1) / 64
    if g == 2:
        return (1 + 2 * a2 + 10 * a2 * a2) / 256
    raise ValueError("explicit coefficients exist for g = 1, 2 only")


def toeplitz_coefficient_engine(g, a, engine=None, p=256):
    """F^(g+1)(0) - F^(g+1)(a) + Selberg constant, F from the recursion."""
    P = _arc_free_energy_poly(g + 1, engine)
    base = P(0) + selberg_constant(g)
    if isinstance(a, mpq):
        return base - P(a * a)
    A = bf(a, p) ** 2
    return bf(base, p) - Poly([bf(c, p) for c in P.c])(A)


MAX_TOEPLITZ_G = 3


def _arc_parameter(gamma, a, p):
    """(a, sin(gamma/2), cos(gamma/2)), exact when a is a Pythagorean rational."""
    if a is not None:
        a = mpq(a)
        if a <= 0:
            raise ValueError("a must be positive")
        r = rational_sqrt(1 + a * a)
        if r is not None:
            return a, a / r, 1 / r
        ctx = context(p)
        r = ctx.sqrt(1 + bf(a * a, p))
        return a, bf(a, p) / r, 1 / r
    ctx = context(p)
    gamma = ctx.mpf(gamma)
    if not 0 < gamma < ctx.pi:
        raise ValueError("need 0 < gamma < pi")
    return ctx.tan(gamma / 2), ctx.sin(gamma / 2), ctx.cos(gamma / 2)


def toeplitz_expansion(gamma=None, max_g=2, a=None, engine="auto", p=256):
    """Coefficients of ln det T_N(1_[-gamma, gamma]) as an AsymptoticSeries
    when a = tan(gamma/2) is a Pythagorean rational, otherwise a list of
    (power, BigFloat) pairs plus the ln N coefficient.

    g = 1, 2 use the printed coefficients; g = 3 needs the engine.
    """
    if max_g > MAX_TOEPLITZ_G:
        raise ValueError("max_g <= %d" % MAX_TOEPLITZ_G)
    if max_g > 2 and engine is None:
        raise ValueError("max_g = %d needs engine support" % max_g)
    a, s, c = _arc_parameter(gamma, a, p)
    eng = None if engine in ("auto", None) else engine
    coeffs = []
    for g in range(1, max_g + 1):
        if g <= 2:
            coeffs.append((-2 * g, toeplitz_coefficient_paper(g, a)))
        else:
            coeffs.append((-2 * g, toeplitz_coefficient_engine(g, a, eng, p)))
    const_rest = ConstantExpr.basis(ZETA1, 3) + ConstantExpr.log(2, mpq(1, 12))
    if isinstance(s, mpq):
        terms = [(2, ConstantExpr.log(s)),
                 (0, ConstantExpr.log(c, mpq(-1, 4)) + const_rest)] + coeffs
        return AsymptoticSeries("N", terms, {0: mpq(-1, 4)})
    ctx = context(p)
    const = -ctx.log(c) / 4 + const_rest.evaluate(p)
    return [(2, ctx.log(s)), (0, const)] + [(k, bf(v, p) if isinstance(v, mpq) else v)
                                             for k, v in coeffs]


def toeplitz_series(gamma=None, N=None, max_g=2, a=None, engine="auto", p=256):
    """Partial sum of the large-N expansion of ln det at a given N."""
    if N is None or N < 1:
        raise ValueError("N must be >= 1")
    exp = toeplitz_expansion(gamma, max_g, a, engine, p)
    if isinstance(exp, AsymptoticSeries):
        return exp.evaluate(N, p)
    ctx = context(p + 16)
    n = ctx.mpf(N)
    acc = -ctx.log(n) / 4
    for k, v in exp:
        acc += v * n ** k
    return context(p).mpf(acc)


# ------------------------------------------------- positive eigenvalues

def positive_prob_series(max_g=3, T=1):
    """ln P(all eigenvalues > 0) for the Gaussian ensemble, in powers of N.

    Assembled from the Barnes expansion and the free energies of the
    positive Gaussian curve; ln T drops out exactly.
    """
    if max_g > 3:
        raise ValueError("max_g <= 3 (free energies of the positive curve)")
    T = mpq(T)
    F0 = fg_oracle("gaussian_plus", 0, {"T": T})
    F1 = fg_oracle("gaussian_plus", 1, {"T": T})
    lead = (ConstantExpr.rational(mpq(3, 4)) + ConstantExpr.log_symbol("T", T, mpq(-1, 2))
            - F0 * (1 / (T * T)))
    const = ConstantExpr.basis(ZETA1) + ConstantExpr.log(2, mpq(1, 6)) - F1
    terms = [(2, lead), (0, const)]
    for g in range(2, max_g + 1):
        Fg = fg_oracle("gaussian_plus", g, {"T": T})
        terms.append((2 - 2 * g, bernoulli(2 * g) / (2 * g * (2 * g - 2)) - Fg * T ** (2 * g - 2)))
    return AsymptoticSeries("N", terms, {0: mpq(-1, 12)})


def positive_prob(N, max_g=3, p=256):
    """(series, ln P at N)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    ser = positive_prob_series(max_g)
    return ser, ser.evaluate(N, p)
