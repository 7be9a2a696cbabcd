"""WKB wave function of the Airy curve built from the recursion.

ln psi = sum_{n,g} hbar^(2g-2+n) / n! * (diagonal of the n-fold primitive of
w_n^g), primitives based at z = infinity.  Only derivatives in x enter the
residual, so the logarithm coming from w_2^0 never has to be represented:
its x-regularized double primitive is -ln(z1 + z2), whose diagonal has
x-derivative -1/(4 z^2).
"""

from itertools import permutations
from math import factorial

from gmpy2 import mpq

from ..curves.curve import catalog
from ..numeric.germ import Germ
from .engine import TREngine

DEFAULT_CAP = 6


class QuantumCurveError(ArithmeticError):
    def __init__(self, order, coeffs):
        super().__init__("nonzero residual at hbar^%d: %s" % (order, coeffs))
        self.order = order


def _laurent(terms):
    """{exponent: coeff} -> dict without zeros."""
    return {e: c for e, c in terms.items() if c != 0}


def _ladd(a, b, scale=1):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + scale * c
    return _laurent(out)


def _lmul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return _laurent(out)


def _ddx(a):
    # d/dx = 1/(2z) d/dz on x = z^2
    return _laurent({e - 2: mpq(e * c, 2) for e, c in a.items()})


def _diagonal_primitive(corr):
    """Diagonal of the n-fold primitive, as a Laurent polynomial in z."""
    out = {}
    for key, c in corr.coeffs.items():
        perms = len(set(permutations(key)))
        e, term = 0, mpq(c * perms)
        for (_, k) in key:
            # integral from infinity of dz / z^k
            term *= mpq(-1, k - 1)
            e -= k - 1
        out[e] = out.get(e, 0) + term
    return _laurent(out)


def wkb_derivatives(K, sign_y=1, engine=None):
    """dS_k/dx for k = 0..K+1 with S = sum hbar^(k-1) S_k."""
    curve = catalog("airy")
    if sign_y == -1:
        from ..curves.curve import SpectralCurve
        curve = SpectralCurve(name="airy_flipped", params=(), x=curve.x, y=-curve.y,
                              sigma=curve.sigma, ram=curve.ram, plane=curve.plane)
    eng = engine or TREngine(curve)
    eps = eng.sign
    # S_0' = eps * y
    ders = [_laurent({1: mpq(eps * sign_y)}), {-2: mpq(-1, 4)}]
    for k in range(2, K + 2):
        acc = {}
        for g in range(0, (k + 1) // 2 + 1):
            n = k + 1 - 2 * g
            if n < 1 or 2 * g - 2 + n <= 0:
                continue
            d = _diagonal_primitive(eng.omega(n, g))
            acc = _ladd(acc, d, mpq(1, factorial(n)))
        ders.append(_ddx(acc))
    return ders


def airy_quantum_check(K=DEFAULT_CAP, sign_y=1, cap=DEFAULT_CAP):
    """Residual of (hbar^2 d^2/dx^2 - x) psi, order by order in hbar.

    Returns {order m: residual Laurent dict}; raises QuantumCurveError on the
    first nonzero order.
    """
    if K > cap:
        raise ValueError("K=%d exceeds the configured cap %d" % (K, cap))
    d = wkb_derivatives(K, sign_y)
    report = {}
    for m in range(0, K + 1):
        r = {}
        for j in range(0, m + 1):
            r = _ladd(r, _lmul(d[j], d[m - j]))
        if m >= 1:
            r = _ladd(r, _ddx(d[m - 1]))
        if m == 0:
            r = _ladd(r, {2: mpq(-1)})  # - x = -z^2
        report[m] = r
        if r:
            raise QuantumCurveError(m, r)
    return report


def leading_action(sign_y=1):
    """S_0 in z: the primitive of eps*y dx = 2 eps z^2 dz."""
    eps = TREngine(catalog("airy")).sign * sign_y
    return Germ(mpq(0), 3, [mpq(2 * eps, 3)], 10 ** 6)
