"""Painleve Lax pairs, their Hamiltonians and exact compatibility checks.

Matrices are 2x2 lists of Expr in the symbols x, q, p, t.  Monodromy
parameters are substituted as rational constants when the pair is built.
"""

import random
from dataclasses import dataclass, field

from gmpy2 import mpq

from ..numeric import Poly, RatFunc
from ..numeric.expr import ZERO, Const, Expr, Sym, is_identically_zero

NAMES = ("P1", "P2", "P3", "P4", "P5", "P6")
X, Qs, Ps, T = Sym("x"), Sym("q"), Sym("p"), Sym("t")

DEFAULT_PARAMS = {
    "P1": {},
    "P2": {"theta": mpq(-9)},
    "P3": {"theta0": mpq(1, 3), "thetainf": mpq(2, 5)},
    "P4": {"theta0": mpq(1, 3), "thetainf": mpq(2, 5)},
    "P5": {"theta0": mpq(1, 3), "theta1": mpq(-2, 7), "thetainf": mpq(2, 5)},
    "P6": {"theta0": mpq(1, 3), "theta1": mpq(-2, 7), "thetat": mpq(3, 11), "thetainf": mpq(2, 5)},
}


class ExcludedDivisor(ValueError):
    """Parameters or evaluation point where the formulas are singular."""


# -- 2x2 helpers ----------------------------------------------------------

def mat_add(A, B):
    return [[A[i][j] + B[i][j] for j in range(2)] for i in range(2)]


def mat_scale(c, A):
    return [[c * A[i][j] for j in range(2)] for i in range(2)]


def mat_mul(A, B):
    return [[A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)] for i in range(2)]


def commutator(A, B):
    AB, BA = mat_mul(A, B), mat_mul(B, A)
    return [[AB[i][j] - BA[i][j] for j in range(2)] for i in range(2)]


def trace(A):
    return A[0][0] + A[1][1]


def det(A):
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def mat_diff(A, s):
    return [[_lift(A[i][j]).diff(s) for j in range(2)] for i in range(2)]


def mat_eval(A, env):
    return [[_lift(A[i][j]).eval(env) for j in range(2)] for i in range(2)]


def _lift(v):
    return v if isinstance(v, Expr) else Const(mpq(v))


def _traceless(a, b, c):
    return [[a, b], [c, -a]]


# -- catalog --------------------------------------------------------------

@dataclass
class LaxPair:
    name: str
    D: list
    R: list
    H: Expr
    params: dict
    aux: dict = field(default_factory=dict)   # P6: z0, z1, zt and the residues

    def structural_identities(self):
        """Exact identities that must hold for the pair, as {label: Expr}."""
        if self.name != "P6":
            return {"Tr D": trace(self.D), "Tr R": trace(self.R)}
        A0, A1, At = self.aux["A0"], self.aux["A1"], self.aux["At"]
        Ainf = self.aux["Ainf"]
        S = mat_add(mat_add(A0, A1), mat_add(At, Ainf))
        out = {"A0+A1+At+Ainf [%d,%d]" % (i, j): S[i][j] for i in range(2) for j in range(2)}
        out["Tr D"] = trace(self.D)
        return out


def _params(name, params):
    merged = dict(DEFAULT_PARAMS[name])
    for k, v in (params or {}).items():
        if k not in merged:
            raise KeyError("%s has no parameter %r (known: %s)" % (name, k, ", ".join(merged) or "none"))
        merged[k] = mpq(v)
    return merged


def _p1(_):
    x, q, p, t = X, Qs, Ps, T
    D = [[-p, x * x + q * x + q * q + t / 2], [4 * (x - q), p]]
    R = [[ZERO, x / 2 + q], [Const(2), ZERO]]
    H = p * p / 2 - 2 * q ** 3 - t * q
    return D, R, H, {}


def _p2(k):
    x, q, p, t = X, Qs, Ps, T
    th = Const(k["theta"])
    d = x * x + p + t / 2
    D = _traceless(d, x - q, -2 * (x * p + q * p + th))
    R = _traceless((x + q) / 2, Const(mpq(1, 2)), -p)
    H = p * p / 2 + (q * q + t / 2) * p + th * q
    return D, R, H, {}


def _p3(k):
    x, q, p, t = X, Qs, Ps, T
    t0, ti = Const(k["theta0"]), Const(k["thetainf"])
    d = t / 2 - ti / (2 * x) + (p - t / 2) / (x * x)
    c = -(p - t) * q - ti + t * (t0 + ti) / (2 * p)
    D = _traceless(d, -p * q / x - p / (x * x), c / x + (p - t) / (x * x))
    r = x / 2 - (p - t / 2) / (t * x) + (t0 + ti) / (2 * p) + q - ti / (2 * t)
    R = _traceless(r, -p * q / t + p / (t * x), c / t - (p - t) / (t * x))
    H = (2 * q * q * p * p + 2 * (-t * q * q + ti * q + t) * p - (t0 + ti) * t * q - t * t
         - (t0 * t0 - ti * ti) / 4 - p * q) / t
    return D, R, H, {}


def _p4(k):
    x, q, p, t = X, Qs, Ps, T
    t0, ti = Const(k["theta0"]), Const(k["thetainf"])
    D = _traceless(x + t + (p * q + t0) / x, 1 - q / x,
                   -2 * (p * q + t0 + ti) + p * (p * q + 2 * t0) / x)
    R = _traceless(x + q + t, Const(1), -2 * (p * q + t0 + ti))
    H = q * p * p + 2 * (q * q + t * q + t0) * p + 2 * (t0 + ti) * q
    return D, R, H, {}


def _p5(k):
    x, q, p, t = X, Qs, Ps, T
    t0, t1, ti = Const(k["theta0"]), Const(k["theta1"]), Const(k["thetainf"])
    a = (t0 - t1 + ti) / 2
    b = (t0 + t1 + ti) / 2
    d = t / 2 + (p * q + t0 / 2) / x - (p * q + (t0 + ti) / 2) / (x - 1)
    D = _traceless(d, -(p * q + t0) / x + (p + a / q) / (x - 1),
                   p * q / x - (p * q * q + q * b) / (x - 1))
    r = x / 2 - (p * (q - 1) ** 2 - t0 + a / q + q * b) / (2 * t)
    R = _traceless(r, -(p * (q - 1) + t0 - a / q) / t, -(q / t) * (p * (q - 1) + b))
    H = (q * (q - 1) ** 2 * p * p + t0 * (t0 + t1 + ti) * q / 2
         + (a * (q - 1) ** 2 + (t0 + t1) * q * (q - 1) - t * q) * p) / t
    return D, R, H, {}


def _p6(k):
    x, q, p, t = X, Qs, Ps, T
    t0, t1, tt, ti = (Const(k[n]) for n in ("theta0", "theta1", "thetat", "thetainf"))
    if k["thetainf"] == 0:
        raise ExcludedDivisor("P6 needs theta_inf != 0")
    s = t0 + t1 + tt - ti
    z0 = (q * q * (q - 1) * (q - t) * p * p + s * s * q * q / 4
          - p * q * (s * q * q - ((t0 + t1 - ti) * t + t0 + tt - ti) * q + (t0 - ti) * t)
          - s * ((t0 + t1 - tt - ti) * t + t0 - t1 - ti + tt) * q / 4
          - t * t0 * ti) / (ti * t)
    z1 = (-q * (q - 1) ** 2 * (q - t) * p * p
          # first power of s in the q^2 term: the squared form breaks the residue sum
          + p * (q - 1) * (s * q * q - q * ((t0 + t1 - ti) * t + t0 + tt) + t0 * t)
          - s * s * (q - 1) ** 2 / 4
          + s * (t * (t0 + t1 - tt - ti) + 2 * ti - 2 * t1) * (q - 1) / 4
          - t1 * ti * (t - 1)) / ((t - 1) * ti)
    zt = -z0 - z1 - (t0 + t1 + tt + ti) / 2
    A0 = _traceless(z0 + t0 / 2, -q / t, t * z0 * (z0 + t0) / q)
    A1 = _traceless(z1 + t1 / 2, (q - 1) / (t - 1), -(t - 1) * z1 * (z1 + t1) / (q - 1))
    At = _traceless(zt + tt / 2, -(q - t) / (t * (t - 1)), t * (t - 1) * zt * (zt + tt) / (q - t))
    Ainf = [[ti / 2, ZERO], [ZERO, -ti / 2]]
    D = mat_add(mat_add(mat_scale(1 / x, A0), mat_scale(1 / (x - 1), A1)), mat_scale(1 / (x - t), At))
    c = (q - t) * (ti - 1) / (2 * t * (t - 1))
    R = mat_add(mat_scale(-1 / (x - t), At), [[-c, ZERO], [ZERO, c]])
    H = (q * (q - 1) * (q - t) * p * p
         - p * (t0 * (q - 1) * (q - t) + t1 * q * (q - t) + (tt - 1) * q * (q - 1))
         # (theta_inf - 2), not - 1: only this matches the Painleve VI coefficients
         + s * (t0 + t1 + tt + ti - 2) * (q - t) / 4
         + ((t - 1) * t0 + t * t1) * (tt - 1) / 2) / (t * (t - 1))
    return D, R, H, {"z0": z0, "z1": z1, "zt": zt, "A0": A0, "A1": A1, "At": At, "Ainf": Ainf}


_BUILDERS = {"P1": _p1, "P2": _p2, "P3": _p3, "P4": _p4, "P5": _p5, "P6": _p6}


def lax_catalog(name, params=None):
    """The Lax pair (D, R) and Hamiltonian of Painleve ``name``."""
    if name not in NAMES:
        raise KeyError("unknown Lax pair %r (known: %s)" % (name, ", ".join(NAMES)))
    k = _params(name, params)
    D, R, H, aux = _BUILDERS[name](k)
    pair = LaxPair(name, D, R, H, k, aux)
    bad = [lbl for lbl, e in pair.structural_identities().items() if not _vanishes(e)]
    if bad:
        raise ArithmeticError("structural identities fail: " + ", ".join(bad))
    return pair


def _vanishes(e, trials=6):
    """Exact zero test; falls back to exact evaluation at random points when
    clearing denominators would be too large."""
    e = _lift(e)
    if len(repr(e)) < 4000:
        return is_identically_zero(e)
    rng = random.Random(7)
    for _ in range(trials):
        env = random_point(rng)
        try:
            if e.eval(env) != 0:
                return False
        except ZeroDivisionError:
            continue
    return True


# -- Hamilton flow and compatibility --------------------------------------

def hamilton_flow(pair, pdot_shift=0):
    """(qdot, pdot) = (dH/dp, -dH/dq), optionally with pdot shifted."""
    qdot = pair.H.diff("p")
    pdot = -pair.H.diff("q")
    if pdot_shift:
        pdot = pdot + pdot_shift
    return qdot, pdot


def zero_curvature(pair, pdot_shift=0):
    """E = dD/dt (total, along the flow) - dR/dx + [D, R] as Expr entries."""
    qdot, pdot = hamilton_flow(pair, pdot_shift)
    Dt = mat_diff(pair.D, "t")
    Dq = mat_diff(pair.D, "q")
    Dp = mat_diff(pair.D, "p")
    Rx = mat_diff(pair.R, "x")
    C = commutator(pair.D, pair.R)
    return [[Dt[i][j] + qdot * Dq[i][j] + pdot * Dp[i][j] - Rx[i][j] + C[i][j]
             for j in range(2)] for i in range(2)]


def random_point(rng, size=40):
    """A rational (x, q, p, t) with small numerators and denominators."""
    def r():
        return mpq(rng.randint(-size, size), rng.randint(1, size // 2))
    return {"x": r(), "q": r(), "p": r(), "t": r()}


def random_points(n, seed=0):
    rng = random.Random(seed)
    return [random_point(rng) for _ in range(n)]


def compatibility_check(pair, points, pdot_shift=0):
    """Max |entry| of the zero-curvature residual over ``points``, exactly.

    Points on an excluded divisor raise ExcludedDivisor.
    """
    if isinstance(pair, str):
        pair = lax_catalog(pair)
    E = zero_curvature(pair, pdot_shift)
    worst = mpq(0)
    for env in points:
        try:
            vals = mat_eval(E, env)
        except ZeroDivisionError as exc:
            raise ExcludedDivisor("singular evaluation at %s" % _fmt_env(env)) from exc
        for row in vals:
            for v in row:
                worst = max(worst, abs(v))
    return worst


def _fmt_env(env):
    return ", ".join("%s=%s" % kv for kv in sorted(env.items()))


def sample_compatibility(pair, n=20, seed=0, pdot_shift=0):
    """compatibility_check over n random rational points, skipping points on
    excluded divisors (they are redrawn)."""
    if isinstance(pair, str):
        pair = lax_catalog(pair)
    rng = random.Random(seed)
    E = zero_curvature(pair, pdot_shift)
    worst = mpq(0)
    used = []
    while len(used) < n:
        env = random_point(rng)
        try:
            vals = mat_eval(E, env)
        except ZeroDivisionError:
            continue
        used.append(env)
        worst = max([worst] + [abs(v) for row in vals for v in row])
    return worst, used


# -- Painleve equations from the Hamiltonians -----------------------------

def painleve_rhs(name, params, q, qd, t):
    """Right-hand side of q'' for the second-order Painleve equations."""
    k = {kk: Const(v) for kk, v in params.items()}
    if name == "P1":
        return 6 * q * q + t
    if name == "P2":
        return 2 * q ** 3 + t * q + mpq(1, 2) - k["theta"]
    if name == "P3":
        return (qd * qd / q - qd / t + 4 * (k["theta0"] * q * q - k["thetainf"] + 1) / t
                + 4 * q ** 3 - 4 / q)
    if name == "P4":
        return (qd * qd / (2 * q) + 2 * (3 * q ** 3 + 4 * t * q * q
                                         + (t * t - 2 * k["thetainf"] + 1) * q
                                         - k["theta0"] ** 2 / q))
    if name == "P5":
        t0, t1, ti = k["theta0"], k["theta1"], k["thetainf"]
        al = (t0 - t1 - ti) ** 2 / 8
        be = -(t0 - t1 + ti) ** 2 / 8
        ga = t0 + t1 - 1
        de = Const(mpq(-1, 2))
        return ((1 / (2 * q) + 1 / (q - 1)) * qd * qd - qd / t
                + (q - 1) ** 2 / (t * t) * (al * q + be / q) + ga * q / t
                + de * q * (q + 1) / (q - 1))
    t0, t1, tt, ti = k["theta0"], k["theta1"], k["thetat"], k["thetainf"]
    al = (ti - 1) ** 2 / 2
    be = -t0 * t0 / 2
    ga = t1 * t1 / 2
    de = (1 - tt * tt) / 2
    return ((1 / q + 1 / (q - 1) + 1 / (q - t)) * qd * qd / 2
            - (1 / t + 1 / (t - 1) + 1 / (q - t)) * qd
            + q * (q - 1) * (q - t) / (t * t * (t - 1) ** 2)
            * (al + be * t / (q * q) + ga * (t - 1) / (q - 1) ** 2 + de * t * (t - 1) / (q - t) ** 2))


def hamilton_painleve_residual(pair, points):
    """q'' from the Hamilton flow minus the Painleve right-hand side at
    (q, p, t) points, exactly.  Returns the max |residual|."""
    qdot, pdot = hamilton_flow(pair)
    qdd = qdot.diff("t") + qdot * qdot.diff("q") + pdot * qdot.diff("p")
    res = qdd - painleve_rhs(pair.name, pair.params, Qs, qdot, T)
    worst = mpq(0)
    for env in points:
        try:
            worst = max(worst, abs(res.eval(env)))
        except ZeroDivisionError:
            continue
    return worst


# -- spectral curve --------------------------------------------------------

@dataclass
class PlaneCurve:
    """y^2 + c0(x) = 0 with c0 a RatFunc in x (trace-free case)."""
    c0: RatFunc

    def minus_det(self):
        return -self.c0

    def __eq__(self, other):
        return isinstance(other, PlaneCurve) and self.c0 == other.c0

    def __str__(self):
        return "y^2 = %r" % (-self.c0,)


def to_ratfunc(e, env, var="x"):
    """Expr -> RatFunc in ``var`` with the other symbols fixed by ``env``."""
    from ..numeric.expr import Add, Mul, Pow
    e = _lift(e)
    if isinstance(e, Const):
        return RatFunc.const(e.v)
    if isinstance(e, Sym):
        return RatFunc.z() if e.name == var else RatFunc.const(mpq(env[e.name]))
    if isinstance(e, Add):
        acc = RatFunc.const(0)
        for term in e.terms:
            acc = acc + to_ratfunc(term, env, var)
        return acc
    if isinstance(e, Mul):
        acc = RatFunc.const(1)
        for f in e.factors:
            acc = acc * to_ratfunc(f, env, var)
        return acc
    if isinstance(e, Pow):
        b = to_ratfunc(e.base, env, var)
        if e.n < 0 and b.is_zero():
            raise ExcludedDivisor("division by zero")
        return b ** e.n
    raise TypeError(type(e))


def leading_data(name, q0, theta=None, t=None):
    """Leading-order (q0, p0, t) for PI and PII in the hbar-scaled system.

    PII: t from 2 q0^3 + t q0 - theta = 0 and p0 from hbar q' = dH/dp at
    order hbar^0, p0 = -q0^2 - t/2.  PI: t = -6 q0^2 and p0 = 0.
    """
    q0 = mpq(q0)
    if name == "P2":
        if q0 == 0:
            raise ExcludedDivisor("q0 = 0")
        theta = mpq(theta)
        tt = (theta - 2 * q0 ** 3) / q0
        if t is not None and mpq(t) != tt:
            raise ValueError("leading-order constraint 2q0^3 + t q0 - theta = 0 violated")
        return {"q": q0, "p": -q0 * q0 - tt / 2, "t": tt, "theta": theta}
    if name == "P1":
        tt = -6 * q0 * q0
        if t is not None and mpq(t) != tt:
            raise ValueError("leading-order constraint 6q0^2 + t = 0 violated")
        return {"q": q0, "p": mpq(0), "t": tt}
    raise KeyError("leading data wired for P1 and P2 only")


def lax_spectral_curve(name, q0, theta=None, t=None):
    """det(y - D^(0)(x)) for PI / PII at leading-order data."""
    lead = leading_data(name, q0, theta, t)
    params = {"theta": lead["theta"]} if name == "P2" else {}
    pair = lax_catalog(name, params)
    env = {"q": lead["q"], "p": lead["p"], "t": lead["t"]}
    D0 = [[to_ratfunc(pair.D[i][j], env) for j in range(2)] for i in range(2)]
    c0 = D0[0][0] * D0[1][1] - D0[0][1] * D0[1][0]
    return PlaneCurve(c0), lead


def p2_curve_target(q0, theta):
    """(x - q0)^2 (x^2 + 2 q0 x + q0^2 + theta/q0), as a RatFunc."""
    q0, theta = mpq(q0), mpq(theta)
    return RatFunc(Poly([-q0, 1]) ** 2 * Poly([q0 * q0 + theta / q0, 2 * q0, 1]))


def p1_curve_target(q0, p0, t):
    """4x^3 + 2tx + (p0^2 - 4q0^3 - 2tq0)."""
    q0, p0, t = mpq(q0), mpq(p0), mpq(t)
    return RatFunc(Poly([p0 * p0 - 4 * q0 ** 3 - 2 * t * q0, 2 * t, 0, 4]))
