"""Small exact expression trees in named symbols.

Enough algebra for Lax matrices: + - * /, integer powers, rational
constants, symbolic d/ds, exact evaluation at rational points, and an exact
zero test by clearing denominators into multivariate polynomials.
"""

from fractions import Fraction

from gmpy2 import mpq

from .rational import Rational


def _num(v):
    if isinstance(v, Expr):
        return v
    if isinstance(v, (int, Rational, Fraction)):
        return Const(mpq(v))
    raise TypeError("cannot lift %r into an Expr" % (v,))


class Expr:
    __slots__ = ()

    def __add__(self, o):
        return add(self, _num(o))

    def __radd__(self, o):
        return add(_num(o), self)

    def __sub__(self, o):
        return add(self, mul(Const(mpq(-1)), _num(o)))

    def __rsub__(self, o):
        return add(_num(o), mul(Const(mpq(-1)), self))

    def __mul__(self, o):
        return mul(self, _num(o))

    def __rmul__(self, o):
        return mul(_num(o), self)

    def __truediv__(self, o):
        return mul(self, power(_num(o), -1))

    def __rtruediv__(self, o):
        return mul(_num(o), power(self, -1))

    def __neg__(self):
        return mul(Const(mpq(-1)), self)

    def __pow__(self, n):
        return power(self, n)

    def free_symbols(self):
        out = set()
        self._syms(out)
        return out


class Const(Expr):
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = mpq(v)

    def diff(self, s):
        return ZERO

    def eval(self, env):
        return self.v

    def _syms(self, out):
        pass

    def __repr__(self):
        return str(self.v)


class Sym(Expr):
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def diff(self, s):
        return ONE if s == self.name else ZERO

    def eval(self, env):
        try:
            return mpq(env[self.name])
        except KeyError:
            raise KeyError("no value for symbol " + self.name) from None

    def _syms(self, out):
        out.add(self.name)

    def __repr__(self):
        return self.name


class Add(Expr):
    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = tuple(terms)

    def diff(self, s):
        out = ZERO
        for t in self.terms:
            out = add(out, t.diff(s))
        return out

    def eval(self, env):
        acc = mpq(0)
        for t in self.terms:
            acc += t.eval(env)
        return acc

    def _syms(self, out):
        for t in self.terms:
            t._syms(out)

    def __repr__(self):
        return "(" + " + ".join(map(repr, self.terms)) + ")"


class Mul(Expr):
    __slots__ = ("factors",)

    def __init__(self, factors):
        self.factors = tuple(factors)

    def diff(self, s):
        out = ZERO
        fs = self.factors
        for i, f in enumerate(fs):
            d = f.diff(s)
            if isinstance(d, Const) and d.v == 0:
                continue
            term = d
            for j, g in enumerate(fs):
                if j != i:
                    term = mul(term, g)
            out = add(out, term)
        return out

    def eval(self, env):
        acc = mpq(1)
        # no early exit on zero: a later factor may still divide by zero
        for f in self.factors:
            acc *= f.eval(env)
        return acc

    def _syms(self, out):
        for f in self.factors:
            f._syms(out)

    def __repr__(self):
        return "*".join(map(repr, self.factors))


class Pow(Expr):
    __slots__ = ("base", "n")

    def __init__(self, base, n):
        self.base, self.n = base, n

    def diff(self, s):
        d = self.base.diff(s)
        if isinstance(d, Const) and d.v == 0:
            return ZERO
        return mul(Const(mpq(self.n)), mul(power(self.base, self.n - 1), d))

    def eval(self, env):
        b = self.base.eval(env)
        if b == 0 and self.n < 0:
            raise ZeroDivisionError("division by zero at %r" % (env,))
        return b ** self.n

    def _syms(self, out):
        self.base._syms(out)

    def __repr__(self):
        return "(%r)^%d" % (self.base, self.n)


ZERO = Const(0)
ONE = Const(1)


def add(a, b):
    if isinstance(a, Const) and a.v == 0:
        return b
    if isinstance(b, Const) and b.v == 0:
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.v + b.v)
    ta = a.terms if isinstance(a, Add) else (a,)
    tb = b.terms if isinstance(b, Add) else (b,)
    return Add(ta + tb)


def mul(a, b):
    if isinstance(a, Const):
        if a.v == 0:
            return ZERO
        if a.v == 1:
            return b
    if isinstance(b, Const):
        if b.v == 0:
            return ZERO
        if b.v == 1:
            return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.v * b.v)
    fa = a.factors if isinstance(a, Mul) else (a,)
    fb = b.factors if isinstance(b, Mul) else (b,)
    return Mul(fa + fb)


def power(a, n):
    if not isinstance(n, int):
        raise TypeError("only integer powers")
    if n == 0:
        return ONE
    if n == 1:
        return a
    if isinstance(a, Const):
        if a.v == 0 and n < 0:
            raise ZeroDivisionError("0 to a negative power")
        return Const(a.v ** n)
    if isinstance(a, Pow):
        return Pow(a.base, a.n * n)
    return Pow(a, n)


def symbols(names):
    return tuple(Sym(n) for n in names.split())


def diff(e, s):
    return _num(e).diff(s)


def evaluate(e, env):
    return _num(e).eval(env)


# -- exact zero test -------------------------------------------------------
# polynomials: {monomial: coeff}, monomial = sorted tuple of (name, exp)

def _pmul(a, b):
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            d = dict(ma)
            for k, e in mb:
                d[k] = d.get(k, 0) + e
            m = tuple(sorted(d.items()))
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _padd(a, b):
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _ppow(a, n):
    out = {(): mpq(1)}
    for _ in range(n):
        out = _pmul(out, a)
    return out


def to_fraction(e):
    """(numerator, denominator) multivariate polynomials with e = N/D."""
    e = _num(e)
    if isinstance(e, Const):
        return ({(): e.v} if e.v else {}), {(): mpq(1)}
    if isinstance(e, Sym):
        return {((e.name, 1),): mpq(1)}, {(): mpq(1)}
    if isinstance(e, Add):
        n, d = {}, {(): mpq(1)}
        for t in e.terms:
            tn, td = to_fraction(t)
            if td == d:
                n = _padd(n, tn)
            else:
                n = _padd(_pmul(n, td), _pmul(tn, d))
                d = _pmul(d, td)
        return n, d
    if isinstance(e, Mul):
        n, d = {(): mpq(1)}, {(): mpq(1)}
        for f in e.factors:
            fn, fd = to_fraction(f)
            n, d = _pmul(n, fn), _pmul(d, fd)
        return n, d
    if isinstance(e, Pow):
        bn, bd = to_fraction(e.base)
        if e.n > 0:
            return _ppow(bn, e.n), _ppow(bd, e.n)
        if not bn:
            raise ZeroDivisionError("identically zero denominator")
        return _ppow(bd, -e.n), _ppow(bn, -e.n)
    raise TypeError(type(e))


def is_identically_zero(e):
    n, _ = to_fraction(e)
    return not n
