"""Painleve II in the hbar-scaled form: WKB coefficients and the leading
determinantal two-point function.

The deformed equation is  hbar^2 q'' = 2q^3 + tq + hbar/2 - theta.  With
q = sum_k q_k hbar^k, every q_k is a rational function of q0 once t is
eliminated through 2q0^3 + t q0 - theta = 0; d/dt becomes
-q0^2/(4q0^3 + theta) d/dq0.
"""

from dataclasses import dataclass

from gmpy2 import mpq

from ..numeric import Poly, RatFunc, rational_sqrt
from ..numeric.expr import Sym, is_identically_zero
from .lax import ExcludedDivisor, leading_data


class DegenerateSolve(ArithmeticError):
    pass


def _t_of_q0(theta):
    # t = (theta - 2 q0^3)/q0
    return RatFunc(Poly([theta, 0, 0, -2]), Poly([0, 1]))


def _ddt(f, theta):
    return f.derivative() * RatFunc(Poly([0, 0, -1]), Poly([theta, 0, 0, 4]))


def _cube_coeff(qs, k, skip=None):
    """hbar^k coefficient of (sum q_i hbar^i)^3, dropping terms that use
    index ``skip`` (the unknown)."""
    acc = RatFunc.const(0)
    for i in range(k + 1):
        for j in range(k + 1 - i):
            l = k - i - j
            if skip is not None and skip in (i, j, l):
                continue
            if max(i, j, l) < len(qs):
                acc = acc + qs[i] * qs[j] * qs[l]
    return acc


@dataclass
class WkbSeries:
    theta: object
    q: list          # q_k as RatFunc in q0

    @property
    def k_max(self):
        return len(self.q) - 1

    def t(self):
        return _t_of_q0(self.theta)

    def residual(self, through=None):
        """Coefficients of hbar^k, k = 0 .. ``through`` (default k_max + 1), of
        hbar^2 q'' - 2q^3 - tq - hbar/2 + theta for the truncated series.

        Every q_k has a power of u = 4q0^3 + theta as denominator, so the
        terms are carried as (polynomial, power of u) without gcds.
        """
        K = self.k_max
        top = K + 1 if through is None else through
        th = self.theta
        u = Poly([th, 0, 0, 4])
        qs = [_UPow.of(f, u) for f in self.q]
        t = _UPow(Poly([th, 0, 0, -2]), 0, u, q0_den=1)
        out = []
        for k in range(top + 1):
            v = _UPow.zero(u)
            if 2 <= k <= K + 2:
                v = v + qs[k - 2].ddt().ddt()
            for i in range(min(k, K) + 1):
                for j in range(min(k - i, K) + 1):
                    l = k - i - j
                    if l <= K:
                        v = v - qs[i] * qs[j] * qs[l] * 2
            if k <= K:
                v = v - t * qs[k]
            if k == 1:
                v = v - _UPow(Poly([mpq(1, 2)]), 0, u)
            if k == 0:
                v = v + _UPow(Poly([th]), 0, u)
            out.append(v.to_ratfunc())
        return out

    def residual_valuation(self, through=None):
        """First k with a non-zero residual coefficient; inf if none up to
        ``through``."""
        for k, v in enumerate(self.residual(through)):
            if not v.is_zero():
                return k
        return float("inf")


class _UPow:
    """num / (q0^a u^e) with u = 4q0^3 + theta fixed."""

    __slots__ = ("num", "e", "u", "a")

    def __init__(self, num, e, u, q0_den=0):
        self.num, self.e, self.u, self.a = num, e, u, q0_den

    @classmethod
    def zero(cls, u):
        return cls(Poly([0]), 0, u)

    @classmethod
    def of(cls, f, u):
        # denominators are c * q0^a * u^e; recover a, e by division
        den = f.den
        a = 0
        while den.degree > 0 and den.c[0] == 0:
            den = Poly(den.c[1:])
            a += 1
        e = 0
        while den.degree > 0:
            quo, rem = den.divmod(u)
            if not rem.is_zero():
                raise ArithmeticError("unexpected denominator factor")
            den, e = quo, e + 1
        return cls(f.num * (1 / den.c[0]), e, u, a)

    def _lift(self, e, a):
        return self.num * self.u ** (e - self.e) * Poly([0, 1]) ** (a - self.a)

    def __add__(self, o):
        e, a = max(self.e, o.e), max(self.a, o.a)
        return _UPow(self._lift(e, a) + o._lift(e, a), e, self.u, a)

    def __sub__(self, o):
        return self + _UPow(-o.num, o.e, o.u, o.a)

    def __mul__(self, o):
        if isinstance(o, _UPow):
            return _UPow(self.num * o.num, self.e + o.e, self.u, self.a + o.a)
        return _UPow(self.num * mpq(o), self.e, self.u, self.a)

    def ddt(self):
        # d/dt = -q0^2/u d/dq0 applied to n / (q0^a u^e)
        n, u, e, a = self.num, self.u, self.e, self.a
        z = Poly([0, 1])
        top = (n.derivative() * u * z - e * n * u.derivative() * z - a * n * u) * Poly([0, -1])
        # -q0^2 (...) / (q0^(a+1) u^(e+1)) / u = -q0 (...) / (q0^a u^(e+2))
        return _UPow(top, e + 2, u, a)

    def to_ratfunc(self):
        if self.num.is_zero():
            return RatFunc.const(0)
        return RatFunc(self.num, self.u ** self.e * Poly([0, 1]) ** self.a)


def p2_wkb(theta, k_max):
    """q_0 .. q_{k_max} of the formal solution, exactly in Q(q0)."""
    theta = mpq(theta)
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    lin = RatFunc(Poly([theta, 0, 0, 4]), Poly([0, 1]))   # 6q0^2 + t
    if lin.is_zero():
        raise DegenerateSolve("6 q0^2 + t vanishes identically")
    qs = [RatFunc.z()]
    for k in range(1, k_max + 1):
        rhs = RatFunc.const(0)
        if k >= 2:
            rhs = rhs + _ddt(_ddt(qs[k - 2], theta), theta)
        rhs = rhs - 2 * _cube_coeff(qs + [RatFunc.const(0)], k, skip=k)
        if k == 1:
            rhs = rhs - mpq(1, 2)
        qs.append(rhs / lin)
    return WkbSeries(theta, qs)


# -- leading determinantal formula ------------------------------------------

@dataclass
class W2Report:
    theta: object
    q0: object
    m: object
    sqrt_identity: bool
    trace_one: bool
    idempotent: bool
    bergman: bool
    literal_one_term: bool   # -Tr(M1 M2)/(2 (x1-x2)^2), the one-cycle reading

    @property
    def passed(self):
        return self.sqrt_identity and self.trace_one and self.idempotent and self.bergman


def _m0(z, q0, p0, m):
    """M^(0) at the point z of the rational parametrization."""
    x = -q0 + m * (z + 1 / z) / 2
    sq = m * (z - 1 / z) / 4
    R = [[(x + q0) / 2, mpq(1, 2)], [-p0, -(x + q0) / 2]]
    M = [[mpq(1, 2) + R[0][0] / (2 * sq), R[0][1] / (2 * sq)],
         [R[1][0] / (2 * sq), mpq(1, 2) - R[0][0] / (2 * sq)]]
    return x, R, sq, M


def _tr2(A, B):
    return A[0][0] * B[0][0] + A[0][1] * B[1][0] + A[1][0] * B[0][1] + A[1][1] * B[1][1]


def p2_w2_check(theta, q0):
    """Exact checks on M^(0) and W_2^(0) = Tr(M(x1) M(x2))/(x1-x2)^2.

    x(z) = -q0 + m(z + 1/z)/2 with m^2 = -theta/q0, which makes
    sqrt(-det R^(0)) = m(z - 1/z)/4 rational in z.
    """
    theta, q0 = mpq(theta), mpq(q0)
    lead = leading_data("P2", q0, theta)
    m = rational_sqrt(-theta / q0)
    if m is None or m == 0:
        raise ExcludedDivisor("-theta/q0 = %s is not a non-zero rational square" % (-theta / q0))
    p0 = lead["p"]
    z = RatFunc.z()
    x, R, sq, M = _m0(z, q0, p0, m)
    det_r = R[0][0] * R[1][1] - R[0][1] * R[1][0]
    sqrt_ok = (-det_r == sq * sq
               and det_r == -(x * x + 2 * q0 * x + q0 * q0 + theta / q0) * mpq(1, 4))
    trace_ok = (M[0][0] + M[1][1]) == 1
    MM = [[M[i][0] * M[0][j] + M[i][1] * M[1][j] for j in range(2)] for i in range(2)]
    idem = all(MM[i][j] == M[i][j] for i in range(2) for j in range(2))
    # two-point function as an exact identity in (z1, z2)
    z1, z2 = Sym("z1"), Sym("z2")
    x1, _, _, M1 = _m0(z1, q0, p0, m)
    x2, _, _, M2 = _m0(z2, q0, p0, m)
    dx1 = m * (1 - 1 / (z1 * z1)) / 2
    dx2 = m * (1 - 1 / (z2 * z2)) / 2
    tr = _tr2(M1, M2)
    bergman = 1 / ((z1 - z2) * (z1 - z2))
    ok = is_identically_zero(tr / ((x1 - x2) * (x1 - x2)) * dx1 * dx2 - bergman)
    literal = is_identically_zero(-tr / (2 * (x1 - x2) * (x1 - x2)) * dx1 * dx2 - bergman)
    return W2Report(theta, q0, m, sqrt_ok, trace_ok, idem, ok, literal)
