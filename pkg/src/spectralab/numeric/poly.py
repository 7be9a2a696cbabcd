"""Dense univariate polynomials and canonical rational functions.

Coefficients live in a field: exact ``mpq`` or mpmath ``mpf``.  Over the
rationals a RatFunc is kept gcd-reduced with a monic denominator, so two
RatFuncs are equal exactly when their fields are equal.
"""

from gmpy2 import mpq

from .rational import Rational


def _is_exact(c):
    return isinstance(c, (Rational, int))


def _strip(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


class Poly:
    """Polynomial sum c[k] z^k.  The zero polynomial has no coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        self.c = tuple(_strip(mpq(v) if isinstance(v, int) else v for v in coeffs))

    @classmethod
    def const(cls, v):
        return cls([v])

    @classmethod
    def z(cls):
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots):
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    @property
    def lead(self):
        return self.c[-1]

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return "Poly(%s)" % (list(map(str, self.c)),)

    def __neg__(self):
        return Poly(-v for v in self.c)

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = out[i] + v
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(v * other for v in self.c)
        a, b = self.c, other.c
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u == 0:
                continue
            for j, v in enumerate(b):
                out[i + j] += u * v
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Poly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        db = other.degree
        inv = 1 / other.lead if _is_exact(other.lead) else 1 / other.lead
        if len(rem) - 1 < db:
            return Poly(), Poly(rem)
        quo = [0] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            q = rem[k] * inv
            quo[k - db] = q
            if q != 0:
                for j, v in enumerate(other.c):
                    rem[k - db + j] -= q * v
            rem[k] = 0
        return Poly(quo), Poly(rem[:db])

    def __call__(self, x):
        acc = 0
        for v in reversed(self.c):
            acc = acc * x + v
        return acc

    def derivative(self):
        return Poly(k * v for k, v in enumerate(self.c) if k)

    def monic(self):
        return self * (1 / self.lead)

    def taylor_shift(self, a):
        """Coefficients of p(a + t) in t."""
        c = list(self.c)
        n = len(c)
        for i in range(n):
            for k in range(n - 2, i - 1, -1):
                c[k] += a * c[k + 1]
        return Poly(c)

    def compose(self, other):
        acc = Poly()
        for v in reversed(self.c):
            acc = acc * other + v
        return acc


def poly_gcd(a, b):
    """Monic gcd over an exact field."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    if a.is_zero():
        return a
    return a.monic()


class RatFunc:
    """num/den in one variable."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, canonical=True):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if den is None:
            den = Poly([1])
        elif not isinstance(den, Poly):
            den = Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if canonical:
            num, den = _canonical(num, den)
        self.num, self.den = num, den

    @classmethod
    def z(cls):
        return cls(Poly.z())

    @classmethod
    def const(cls, v):
        return cls(Poly.const(v))

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return "RatFunc(%r / %r)" % (self.num, self.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den, canonical=False)

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return RatFunc.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, Poly):
                other = RatFunc(other)
            else:
                return RatFunc(self.num * other, self.den)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other) if not isinstance(other, Poly) else RatFunc(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc.const(other) / self

    def __pow__(self, n):
        if n < 0:
            return RatFunc(self.den ** (-n), self.num ** (-n))
        return RatFunc(self.num ** n, self.den ** n, canonical=False)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(x) / d

    def derivative(self):
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def compose(self, other):
        """self(other(z)) for a RatFunc ``other``."""
        n, d = self.num, self.den
        deg = max(n.degree, d.degree, 0)
        pn, pd = other.num, other.den

        def hom(p):
            acc = Poly()
            for k, v in enumerate(p.c):
                acc = acc + (pn ** k) * (pd ** (deg - k)) * v
            return acc

        return RatFunc(hom(n), hom(d))

    def partial_fractions(self, roots):
        """Split into polynomial part plus sum c / (z - r)^k.

        ``roots`` is a list of (root, multiplicity) that must factor the
        denominator exactly.  Returns (Poly, {(r, k): c}).
        """
        test = Poly([1])
        for r, m in roots:
            test = test * Poly([-r, 1]) ** m
        if test != self.den:
            raise ValueError("supplied roots do not factor the denominator")
        quo, rem = self.num.divmod(self.den)
        part = RatFunc(rem, self.den)
        from .germ import expand
        out = {}
        for r, m in roots:
            g = expand(part, r, 0)
            for k in range(1, m + 1):
                c = g.coeff(-k)
                if c != 0:
                    out[(r, k)] = c
        return quo, out

    @staticmethod
    def from_partial_fractions(poly_part, terms):
        acc = RatFunc(poly_part)
        for (r, k), c in terms.items():
            acc = acc + RatFunc(Poly.const(c), Poly([-r, 1]) ** k)
        return acc


def _canonical(num, den):
    if num.is_zero():
        return Poly(), Poly([1])
    exact = all(_is_exact(v) for v in num.c + den.c)
    if exact:
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
    lead = den.lead
    if lead != 1:
        inv = 1 / lead
        num = num * inv
        den = den * inv
    return num, den


def mobius(a, b, c, d):
    """(a z + b) / (c z + d) as a RatFunc."""
    return RatFunc(Poly([b, a]), Poly([d, c]))
