"""Genus-0 spectral curves with a global Moebius involution."""

from dataclasses import dataclass, field

from gmpy2 import mpq

from ..numeric import Poly, RatFunc, expand, mobius, rational_sqrt
from ..numeric.rational import fmt_rational


class NeedsAlgebraicExtension(ValueError):
    """Requested parameters would need an irrational coefficient."""

    def __init__(self, surd, value):
        super().__init__("needs algebraic extension: %s = %s is not a rational square"
                         % (surd, fmt_rational(value)))
        self.surd = surd


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class SpectralCurve:
    name: str
    params: tuple  # ((key, Rational), ...) sorted by key
    x: RatFunc
    y: RatFunc
    sigma: tuple  # (a, b, c, d): z -> (a z + b)/(c z + d)
    ram: tuple
    ring: str = "Rational"
    # plane model P(x, y) = sum c * x^i * y^j, stored as ((i, j, c), ...)
    plane: tuple = field(default=())

    @property
    def key(self):
        return (self.name, self.params, self.x, self.y, self.sigma, self.ram)

    def param(self, k):
        return dict(self.params)[k]

    def sigma_rf(self):
        return mobius(*self.sigma)

    def sigma_at(self, z):
        a, b, c, d = self.sigma
        return (a * z + b) / (c * z + d)

    def y_sigma(self):
        return self.y.compose(self.sigma_rf())

    def dx(self):
        return self.x.derivative()

    def plane_value(self, xv, yv):
        acc = 0
        for i, j, c in self.plane:
            acc = acc + c * xv ** i * yv ** j
        return acc

    def label(self):
        ps = ",".join("%s=%s" % (k, fmt_rational(v)) for k, v in self.params)
        return "%s(%s)" % (self.name, ps)


def _q(v):
    return mpq(v)


def _plane(terms):
    """Plane polynomial from {(i, j): c}, dropping zeros, sorted."""
    return tuple((i, j, mpq(c)) for (i, j), c in sorted(terms.items()) if c != 0)


def _poly_xy_terms(px, py, c=1):
    return {(px, py): c}


def _add_terms(*ts):
    out = {}
    for t in ts:
        for k, v in t.items():
            out[k] = out.get(k, 0) + v
    return out


def _xpoly_times_y(poly_coeffs, ypow):
    return {(i, ypow): c for i, c in enumerate(poly_coeffs) if c != 0}


def _coeffs(p):
    return list(p.c)


CATALOG = ("gaussian", "exponential", "gaussian_plus", "toeplitz_arc", "sine",
           "airy", "bessel", "p2")

DEFAULTS = {
    "gaussian": {"T": 1}, "exponential": {"T": 1}, "gaussian_plus": {"T": 3},
    "toeplitz_arc": {"a": mpq(3, 4)}, "sine": {"s": 1}, "airy": {},
    "bessel": {"T": 1}, "p2": {"q0": 1, "theta": -9},
}


def catalog(name, params=None):
    """Build and validate a catalog curve.  ``params`` maps names to rationals."""
    if name not in CATALOG:
        raise KeyError("unknown curve %r (known: %s)" % (name, ", ".join(CATALOG)))
    ps = dict(DEFAULTS[name])
    if params:
        unknown = set(params) - set(ps)
        if unknown:
            raise KeyError("unknown parameter(s) for %s: %s" % (name, sorted(unknown)))
        ps.update(params)
    ps = {k: _q(v) for k, v in ps.items()}
    z = RatFunc.z()
    one = RatFunc.const(1)
    inv = (mpq(0), mpq(1), mpq(1), mpq(0))
    neg = (mpq(-1), mpq(0), mpq(0), mpq(1))
    pm1 = (mpq(1), mpq(-1))

    if name == "gaussian":
        T = ps["T"]
        _positive(T, "T")
        r = rational_sqrt(T)
        if r is None:
            raise NeedsAlgebraicExtension("sqrt(T)", T)
        x = r * (z + 1 / z)
        y = r * (z - 1 / z) / 2
        plane = {(0, 2): 1, (2, 0): mpq(-1, 4), (0, 0): T}
        sig, ram = inv, pm1
    elif name == "exponential":
        T = ps["T"]
        _positive(T, "T")
        x = T * (z + 1) ** 2 / z
        y = (z - 1) / (2 * (z + 1))
        plane = {(1, 2): 4, (1, 0): -1, (0, 0): 4 * T}
        sig, ram = inv, pm1
    elif name == "gaussian_plus":
        T = ps["T"]
        _positive(T, "T")
        u = rational_sqrt(T / 3)
        if u is None:
            raise NeedsAlgebraicExtension("sqrt(T/3)", T / 3)
        x = u * (2 + z + 1 / z)
        y = u * (4 + z + 1 / z) * (z - 1) / (2 * (z + 1))
        # 4 x y^2 - (x + 2u)^2 (x - 4u)
        cub = (Poly([2 * u, 1]) ** 2) * Poly([-4 * u, 1])
        plane = _add_terms({(1, 2): 4}, {(i, 0): -c for i, c in enumerate(cub.c)})
        sig, ram = inv, pm1
    elif name == "toeplitz_arc":
        a = ps["a"]
        _positive(a, "a")
        r = rational_sqrt(1 + a * a)
        if r is None:
            raise NeedsAlgebraicExtension("sqrt(1+a^2)", 1 + a * a)
        x = a * (z + 1 / z) / 2
        y = r * 2 / (a * (1 + x * x) * (z - 1 / z))
        # y^2 (1 + x^2)^2 (x^2 - a^2) - (1 + a^2)
        poly = (Poly([1, 0, 1]) ** 2) * Poly([-a * a, 0, 1])
        plane = _add_terms(_xpoly_times_y(poly.c, 2), {(0, 0): -(1 + a * a)})
        sig, ram = inv, pm1
    elif name == "sine":
        s = ps["s"]
        _positive(s, "s")
        x = (z + 1) ** 2 / (4 * z)
        y = s * (z * z + 1) / (z * z - 1)
        # y^2 x (x - 1) - s^2 (x - 1/2)^2
        plane = _add_terms(_xpoly_times_y([0, -1, 1], 2),
                           {(2, 0): -s * s, (1, 0): s * s, (0, 0): -s * s / 4})
        sig, ram = inv, pm1
    elif name == "airy":
        x = z * z
        y = z
        plane = {(0, 2): 1, (1, 0): -1}
        sig, ram = neg, (mpq(0),)
    elif name == "bessel":
        T = ps["T"]
        _positive(T, "T")
        x = z * z - T * T
        y = z / (2 * (z * z - T * T))
        plane = {(2, 2): 4, (1, 0): -1, (0, 0): -T * T}
        sig, ram = neg, (mpq(0),)
    elif name == "p2":
        q0, th = ps["q0"], ps["theta"]
        if q0 == 0:
            raise CurveError("p2 curve needs q0 != 0")
        m = rational_sqrt(-th / q0)
        if m is None or m == 0:
            raise NeedsAlgebraicExtension("sqrt(-theta/q0)", -th / q0)
        x = -q0 + m * (z + 1 / z) / 2
        y = (x - q0) * m * (z - 1 / z) / 2
        # y^2 - (x - q0)^2 ((x + q0)^2 + theta/q0)
        poly = (Poly([-q0, 1]) ** 2) * (Poly([q0, 1]) ** 2 + th / q0)
        plane = _add_terms({(0, 2): 1}, {(i, 0): -c for i, c in enumerate(poly.c)})
        sig, ram = inv, pm1
    curve = SpectralCurve(
        name=name,
        params=tuple(sorted(ps.items())),
        x=x, y=y, sigma=sig, ram=tuple(mpq(r) for r in ram),
        plane=_plane(plane),
    )
    report = validate(curve)
    if not report.ok:
        raise CurveError("catalog curve failed validation: %s" % report.failures)
    return curve


def _positive(v, label):
    if v <= 0:
        raise ValueError("%s must be positive" % label)


class ValidationReport:
    def __init__(self):
        self.checks = []  # (name, passed, detail)
        self.edges = {}

    def add(self, name, passed, detail=""):
        self.checks.append((name, bool(passed), detail))

    @property
    def ok(self):
        return all(p for _, p, _ in self.checks)

    @property
    def failures(self):
        return [(n, d) for n, p, d in self.checks if not p]

    def as_dict(self):
        return {"ok": self.ok,
                "checks": [{"check": n, "pass": p, "detail": d} for n, p, d in self.checks],
                "edges": {fmt_rational(k): v for k, v in self.edges.items()}}


def _witness(rf, pts=(mpq(2), mpq(3), mpq(5, 7), mpq(-7, 3))):
    for p in pts:
        try:
            v = rf(p)
        except ZeroDivisionError:
            continue
        if v != 0:
            return "z=%s gives %s" % (fmt_rational(p), fmt_rational(v))
    return "nonzero rational function %r" % (rf,)


def validate(curve):
    """Check every curve invariant; failures carry a witness point."""
    rep = ValidationReport()
    s = curve.sigma_rf()
    ss = s.compose(s)
    rep.add("sigma_involution", ss == RatFunc.z(),
            "" if ss == RatFunc.z() else _witness(ss - RatFunc.z()))
    xs = curve.x.compose(s)
    diff = xs - curve.x
    rep.add("x_sigma_invariant", diff.is_zero(), "" if diff.is_zero() else _witness(diff))
    dx = curve.dx()
    ys = curve.y_sigma()
    dy = curve.y - ys
    for a in curve.ram:
        tag = fmt_rational(a)
        g = expand(dx, a, 3)
        ok = g.val == 1
        rep.add("ram_simple_zero_dx@" + tag, ok,
                "" if ok else "order of dx at z=%s is %d" % (tag, g.val))
        fixed = curve.sigma_at(a) == a if (curve.sigma[2] * a + curve.sigma[3]) != 0 else False
        rep.add("sigma_fixes@" + tag, fixed, "" if fixed else "sigma(%s) != %s" % (tag, tag))
        gy = expand(dy, a, 3)
        # regular branch point: simple zero; hard edge: simple pole of y - y o sigma
        kind = {1: "soft", -1: "hard"}.get(gy.val)
        rep.edges[a] = kind or "order %d" % gy.val
        rep.add("regular@" + tag, kind is not None,
                "" if kind else "y - y(sigma) has order %d at z=%s" % (gy.val, tag))
    # no other branch points: numerator of dx is exhausted by the listed points
    num = dx.num
    for a in curve.ram:
        q, r = num.divmod(Poly([-a, 1]))
        if r.is_zero():
            num = q
    rep.add("ram_complete", num.degree == 0,
            "" if num.degree == 0 else "dx has extra zeros: %r" % (num,))
    if curve.plane:
        val = curve.plane_value(curve.x, curve.y)
        if not isinstance(val, RatFunc):
            val = RatFunc.const(val)
        rep.add("plane_equation", val.is_zero(), "" if val.is_zero() else _witness(val))
    return rep
