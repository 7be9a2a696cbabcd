"""Closed-form free energies, partition functions and the hard-edge F1 formula."""

from dataclasses import dataclass, field
from math import factorial

from gmpy2 import mpq

from ..numeric import Poly, bernoulli, bf, context
from .constexpr import IPI, ConstantExpr

FAMILIES = ("gaussian", "exponential", "bessel", "gaussian_plus", "sine")
MODELS = ("gaussian", "exponential", "selberg111", "toeplitz_full_circle")

SINE_G5 = {"local_expansion": mpq(-6575, 16), "jimbo_miwa": mpq(-6375, 16)}


class OracleRangeError(ValueError):
    pass


@dataclass(frozen=True)
class Disputed:
    """Two printed values for the same quantity, keyed by where they come from."""
    values: dict = field(default_factory=dict)

    def candidates(self):
        return sorted(self.values.values())


def _gaussian_fg(g, T):
    return -bernoulli(2 * g) / (2 * g * (2 * g - 2) * T ** (2 * g - 2))


def fg_oracle(family, g, params=None):
    """F^(g) of a catalog family: Rational for g >= 2, ConstantExpr for g <= 1.

    ``sine`` at g = 5 returns a Disputed pair (s^-8 times -6575/16 or -6375/16).
    """
    params = dict(params or {})
    if family not in FAMILIES:
        raise KeyError("unknown family %r (known: %s)" % (family, ", ".join(FAMILIES)))
    if g < 0:
        raise OracleRangeError("g must be >= 0")
    if family == "sine":
        s = mpq(params.get("s", 1))
        if g == 0:
            return ConstantExpr.rational(-s * s / 8)
        if g == 1:
            return ConstantExpr.log_symbol("s", s, mpq(1, 4))
        known = {2: mpq(1, 8), 3: mpq(-5, 8), 4: mpq(131, 12)}
        if g in known:
            return known[g] / s ** (2 * g - 2)
        if g == 5:
            return Disputed({k: v / s ** 8 for k, v in SINE_G5.items()})
        raise OracleRangeError("sine: closed forms known for g <= 5")
    T = mpq(params.get("T", 1))
    if T <= 0:
        raise OracleRangeError("T must be positive")
    lnT = lambda c: ConstantExpr.log_symbol("T", T, c)  # noqa: E731
    if family == "gaussian":
        if g == 0:
            return ConstantExpr.rational(3 * T * T / 4) + lnT(-T * T / 2)
        if g == 1:
            return lnT(mpq(-1, 12))
        return _gaussian_fg(g, T)
    if family == "exponential":
        if g == 0:
            return ConstantExpr.rational(3 * T * T / 2) + lnT(-T * T)
        if g == 1:
            return lnT(mpq(-1, 6))
        return 2 * _gaussian_fg(g, T)
    if family == "bessel":
        if g == 0:
            return (ConstantExpr.rational(-3 * T * T / 4) + lnT(T * T / 2)
                    + ConstantExpr.log(2, T * T / 2) + ConstantExpr.basis(IPI, mpq(1, 24)))
        if g == 1:
            return (lnT(mpq(1, 12)) + ConstantExpr.log(2, mpq(1, 24))
                    + ConstantExpr.basis(IPI, T * T / 24))
        return -_gaussian_fg(g, T)
    # gaussian_plus
    if g == 0:
        return (ConstantExpr.rational(3 * T * T / 4) + lnT(-T * T / 2)
                + ConstantExpr.log(3, T * T / 2))
    if g == 1:
        return ConstantExpr.log(2, mpq(1, 3)) + ConstantExpr.log(3, mpq(-1, 8))
    if g == 2:
        return mpq(29, 5760) / T ** 2
    if g == 3:
        return mpq(-4855, 1161216) / T ** 4
    raise OracleRangeError("gaussian_plus: closed forms known for g <= 3")


def chekhov_f1(M, a, b, T):
    """(1/24) ln(M(a)^3 M(b) (a - b)^4 / T^4) for exact rational data.

    The density is -M(x)/(T pi) sqrt((x - b)/(x - a)) with a the hard edge.
    On the support that square root is imaginary, so M is usually i times a
    real polynomial; pass the real polynomial, the i^4 drops out.  The value
    is invariant under x -> lambda x (with M -> M/lambda), so data may be
    given in rescaled coordinates.
    """
    if not isinstance(M, Poly):
        M = Poly(M)
    Ma, Mb = M(mpq(a)), M(mpq(b))
    if Ma == 0 or Mb == 0:
        raise ValueError("M vanishes at an endpoint: the curve is critical")
    arg = Ma ** 3 * Mb * (mpq(a) - mpq(b)) ** 4 / mpq(T) ** 4
    if arg <= 0:
        raise ValueError("log argument %s is not positive" % arg)
    return ConstantExpr.log(arg, mpq(1, 24))


def hard_edge_data(model, T=1):
    """(M, a, b, T) for the hard-edge models, exact.

    gaussian_plus is given in the coordinate x / sqrt(T/3), which keeps all
    entries rational.
    """
    T = mpq(T)
    if model == "exponential":
        # rho = (1/(2 pi T)) sqrt((4T - x)/x): M = i/2
        return Poly([mpq(1, 2)]), mpq(0), 4 * T, T
    if model == "gaussian_plus":
        # rho(v) = (v + 2)/(6 pi) sqrt((4 - v)/v) in v = x/u, u^2 = T/3
        return Poly([T / 3, T / 6]), mpq(0), mpq(4), T
    raise KeyError("no hard-edge data for %r" % model)


def _superfactorial(n):
    """prod_{j=1}^{n-1} j!"""
    acc = 1
    f = 1
    for j in range(1, n):
        f *= j
        acc *= f
    return acc


@dataclass(frozen=True)
class PartitionValue:
    model: str
    N: int
    value: object          # ln Z at the requested precision
    exact_factor: object   # the integer/rational factorial part, exact
    scale: object          # remaining factor as (base, exponent) pairs


def partition_oracle(model, N, T=1, p=128):
    """ln Z for the exactly solvable models."""
    if N < 1:
        raise ValueError("N must be >= 1")
    T = mpq(T)
    work = p + 32
    ctx = context(work)
    if model == "gaussian":
        # Z = N! prod j! (2 pi)^(N/2) (T/N)^(N^2/2)
        ex = factorial(N) * _superfactorial(N)
        scale = (("2pi", mpq(N, 2)), (T / N, mpq(N * N, 2)))
        v = ctx.log(ex) + mpq(N, 2) * ctx.log(2 * ctx.pi) + mpq(N * N, 2) * ctx.log(bf(T / N, work))
    elif model == "exponential":
        # Z = N! (prod i!)^2 (T/N)^(N^2)
        ex = factorial(N) * _superfactorial(N) ** 2
        scale = ((T / N, N * N),)
        v = ctx.log(ex) + N * N * ctx.log(bf(T / N, work))
    elif model == "selberg111":
        ex = mpq(2 ** (N * N) * factorial(N) * _superfactorial(N) ** 4, _superfactorial(2 * N))
        scale = ()
        v = ctx.log(bf(ex, work))
    elif model == "toeplitz_full_circle":
        ex, scale = 1, ()
        v = ctx.zero
    else:
        raise KeyError("unknown model %r (known: %s)" % (model, ", ".join(MODELS)))
    return PartitionValue(model, N, context(p).mpf(v), ex, scale)
