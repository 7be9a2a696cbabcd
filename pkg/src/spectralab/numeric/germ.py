"""Truncated Laurent series at a rational center.

A Germ stores coefficients for exponents ``val .. prec-1`` of (z - center).
Everything at or above ``prec`` is unknown, and every operation propagates
the tightest window it can justify.  Asking for an unknown coefficient
raises InsufficientOrder so callers can re-expand deeper instead of using a
silently wrong number.
"""

from gmpy2 import mpq


class InsufficientOrder(ArithmeticError):
    """A coefficient beyond the known truncation window was requested."""

    def __init__(self, needed, known):
        super().__init__("need exponent %d, germ known below %d" % (needed, known))
        self.needed = needed
        self.known = known


class LogObstruction(ArithmeticError):
    """Integration across a nonzero residue without the caller's consent."""


class Germ:
    __slots__ = ("center", "val", "c", "prec")

    def __init__(self, center, val, coeffs, prec):
        coeffs = list(coeffs[: max(prec - val, 0)])
        k = 0
        while k < len(coeffs) and coeffs[k] == 0:
            k += 1
        if k == len(coeffs):
            self.center, self.val, self.c, self.prec = center, prec, [], prec
            return
        self.center = center
        self.val = val + k
        self.c = coeffs[k:]
        self.prec = prec

    @classmethod
    def monomial(cls, center, k, prec, coeff=1):
        return cls(center, k, [mpq(coeff)], prec)

    @classmethod
    def const(cls, center, v, prec):
        return cls(center, 0, [v], prec)

    def is_zero(self):
        return not self.c

    def coeff(self, k):
        if k >= self.prec:
            raise InsufficientOrder(k, self.prec)
        i = k - self.val
        if i < 0 or i >= len(self.c):
            return mpq(0)
        return self.c[i]

    def coeffs_between(self, lo, hi):
        return [self.coeff(k) for k in range(lo, hi)]

    def __repr__(self):
        terms = ["%s*t^%d" % (v, self.val + i) for i, v in enumerate(self.c) if v != 0]
        return "Germ(@%s: %s + O(t^%d))" % (self.center, " + ".join(terms) or "0", self.prec)

    def _check(self, other):
        if other.center != self.center:
            raise ValueError("germs at different centers")

    def truncate(self, prec):
        if prec > self.prec:
            raise InsufficientOrder(prec - 1, self.prec)
        return Germ(self.center, self.val, self.c, prec)

    def __neg__(self):
        return Germ(self.center, self.val, [-v for v in self.c], self.prec)

    def __add__(self, other):
        if not isinstance(other, Germ):
            return self + Germ.const(self.center, other, self.prec)
        self._check(other)
        prec = min(self.prec, other.prec)
        v = min(self.val, other.val)
        if v >= prec:
            return Germ(self.center, prec, [], prec)
        out = [0] * (prec - v)
        for i, x in enumerate(self.c):
            k = self.val + i - v
            if k < len(out):
                out[k] = x
        for i, x in enumerate(other.c):
            k = other.val + i - v
            if k < len(out):
                out[k] = out[k] + x
        return Germ(self.center, v, out, prec)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Germ):
            if other == 0:
                return Germ(self.center, self.prec, [], self.prec)
            return Germ(self.center, self.val, [v * other for v in self.c], self.prec)
        self._check(other)
        a, b = self.c, other.c
        v = self.val + other.val
        prec = min(self.prec + other.val, other.prec + self.val)
        if not a or not b:
            return Germ(self.center, prec, [], prec)
        n = prec - v
        if n <= 0:
            return Germ(self.center, prec, [], prec)
        out = [0] * n
        lb = len(b)
        for i, x in enumerate(a):
            if i >= n:
                break
            if x == 0:
                continue
            for j in range(min(lb, n - i)):
                out[i + j] += x * b[j]
        return Germ(self.center, v, out, prec)

    __rmul__ = __mul__

    def inv(self):
        if not self.c:
            raise ZeroDivisionError("germ is zero to working order %d" % self.prec)
        r = self.prec - self.val
        a = self.c
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, r):
            acc = 0
            for j in range(1, min(k, len(a) - 1) + 1):
                acc += a[j] * out[k - j]
            out.append(-acc * inv0)
        return Germ(self.center, -self.val, out, -self.val + r)

    def __truediv__(self, other):
        if isinstance(other, Germ):
            return self * other.inv()
        return self * (1 / other)

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        if n == 0:
            rel = self.prec - self.val if self.c else 0
            return Germ.const(self.center, mpq(1), rel)
        out = None
        base = self
        while n:
            if n & 1:
                out = base if out is None else out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def derivative(self):
        return Germ(self.center, self.val - 1,
                    [(self.val + i) * v for i, v in enumerate(self.c)], self.prec - 1)

    def integrate(self, allow_log=False):
        """Termwise primitive with zero constant.

        With allow_log the residue is dropped and returned alongside:
        (germ, residue).  Otherwise a nonzero residue raises.
        """
        res = self.coeff(-1) if self.prec > -1 else None
        if res is None:
            raise InsufficientOrder(-1, self.prec)
        if res != 0 and not allow_log:
            raise LogObstruction("nonzero residue %s blocks integration" % res)
        out = []
        for i, v in enumerate(self.c):
            k = self.val + i
            if isinstance(v, int):
                v = mpq(v)
            out.append(0 if k == -1 else v / (k + 1))
        g = Germ(self.center, self.val + 1, out, self.prec + 1)
        if allow_log:
            return g, res
        return g

    def residue(self):
        return self.coeff(-1)

    def shift(self, k):
        """Multiply by t^k."""
        return Germ(self.center, self.val + k, self.c, self.prec + k)

    def compose(self, inner):
        """self(inner(t)) where inner(t) -> self.center as t -> 0."""
        d = inner - self.center
        if not d.c or d.val < 1:
            raise ValueError("inner germ must tend to the outer center")
        e, rel = d.val, d.prec - d.val
        out_prec = min(self.prec * e, self.val * e + rel)
        acc = Germ(inner.center, out_prec, [], out_prec)
        for i, ck in enumerate(self.c):
            if ck != 0:
                acc = acc + (d ** (self.val + i)).truncate_up(out_prec) * ck
        return acc

    def truncate_up(self, prec):
        if prec >= self.prec:
            return self
        return Germ(self.center, self.val, self.c, prec)


def expand(rf, center, order):
    """Laurent germ of a RatFunc at ``center`` with exponents < ``order``."""
    num = rf.num.taylor_shift(center).c
    den = rf.den.taylor_shift(center).c
    j = 0
    while j < len(num) and num[j] == 0:
        j += 1
    if j == len(num):
        return Germ(center, order, [], order)
    m = 0
    while den[m] == 0:
        m += 1
    num, den = num[j:], den[m:]
    v = j - m
    n = order - v
    if n <= 0:
        return Germ(center, order, [], order)
    inv0 = 1 / den[0]
    out = []
    ld = len(den)
    for k in range(n):
        acc = num[k] if k < len(num) else 0
        for i in range(1, min(k, ld - 1) + 1):
            acc -= den[i] * out[k - i]
        out.append(acc * inv0)
    return Germ(center, v, out, order)
