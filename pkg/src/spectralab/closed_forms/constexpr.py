"""Exact constants and asymptotic series with symbolic logarithms.

A ConstantExpr is a finite sum  sum_k c_k * e_k  with rational c_k over the
basis elements

    1, ln p (p prime), ln T, ln s, zeta'(-1), ln(2 pi), i pi

Nothing is merged numerically: two expressions are equal only when their
coefficient tables agree.  Values of the symbols T and s travel with the
expression and are used only by ``evaluate``.
"""

from gmpy2 import mpq

from ..numeric import bf, constant, context, fmt_rational

ONE = "1"
ZETA1 = "zeta'(-1)"
LN2PI = "ln(2pi)"
IPI = "i*pi"
SYMBOLS = ("T", "s")

_ORDER = {ONE: 0, ZETA1: 3, LN2PI: 4, IPI: 5}


def _factor(n):
    """Prime factorization of a positive integer as {p: e}."""
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _key_rank(k):
    if k in _ORDER:
        return (_ORDER[k], 0, "")
    if k.startswith("ln") and k[2:].isdigit():
        return (1, int(k[2:]), "")
    return (2, 0, k)


class ConstantExpr:
    __slots__ = ("terms", "env")

    def __init__(self, terms=None, env=None):
        self.terms = {k: mpq(v) for k, v in (terms or {}).items() if v != 0}
        self.env = dict(env or {})

    # -- construction -------------------------------------------------
    @classmethod
    def rational(cls, r):
        return cls({ONE: r})

    @classmethod
    def basis(cls, key, coeff=1, env=None):
        return cls({key: coeff}, env)

    @classmethod
    def log(cls, r, coeff=1):
        """coeff * ln r for a positive rational r, split over primes."""
        r = mpq(r)
        if r <= 0:
            raise ValueError("log of a non-positive rational")
        terms = {}
        for part, sgn in ((int(r.numerator), 1), (int(r.denominator), -1)):
            for p, e in _factor(part).items():
                key = "ln%d" % p
                terms[key] = terms.get(key, 0) + sgn * e * mpq(coeff)
        return cls(terms)

    @classmethod
    def log_symbol(cls, name, value, coeff=1):
        if name not in SYMBOLS:
            raise KeyError(name)
        return cls({"ln" + name: coeff}, {name: mpq(value)})

    # -- arithmetic ----------------------------------------------------
    def _merge_env(self, other):
        env = dict(self.env)
        for k, v in other.env.items():
            if k in env and env[k] != v:
                raise ValueError("conflicting values for symbol %s" % k)
            env[k] = v
        return env

    def __add__(self, other):
        if not isinstance(other, ConstantExpr):
            other = ConstantExpr.rational(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return ConstantExpr(t, self._merge_env(other))

    __radd__ = __add__

    def __neg__(self):
        return ConstantExpr({k: -v for k, v in self.terms.items()}, self.env)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, r):
        if isinstance(r, ConstantExpr):
            if set(r.terms) - {ONE}:
                raise TypeError("only rational multiples are exact here")
            r = r.terms.get(ONE, 0)
        return ConstantExpr({k: v * mpq(r) for k, v in self.terms.items()}, self.env)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ConstantExpr):
            other = ConstantExpr.rational(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def coeff(self, key):
        return self.terms.get(key, mpq(0))

    def is_rational(self):
        return set(self.terms) <= {ONE}

    def expand_symbols(self):
        """Replace ln T, ln s by prime logarithms of their rational values."""
        out = ConstantExpr({k: v for k, v in self.terms.items() if k[2:] not in SYMBOLS})
        for name in SYMBOLS:
            c = self.terms.get("ln" + name)
            if c:
                out = out + ConstantExpr.log(self.env[name], c)
        return out

    # -- output --------------------------------------------------------
    def evaluate(self, p):
        """BigFloat value at p bits (complex when an i*pi term is present)."""
        work = max(p, 64) + 16
        ctx = context(work)
        re = ctx.zero
        im = ctx.zero
        for k, c in self.terms.items():
            cv = bf(c, work)
            if k == ONE:
                re += cv
            elif k == ZETA1:
                re += cv * constant("zeta_prime_minus1", work)
            elif k == LN2PI:
                re += cv * ctx.log(2 * ctx.pi)
            elif k == IPI:
                im += cv * ctx.pi
            elif k[2:] in SYMBOLS:
                re += cv * ctx.log(bf(self.env[k[2:]], work))
            else:
                re += cv * ctx.log(int(k[2:]))
        out = context(p)
        if im:
            return out.mpc(re, im)
        return out.mpf(re)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=_key_rank):
            c = self.terms[k]
            name = "" if k == ONE else ("ln(%s)" % k[2:] if k.startswith("ln") and "(" not in k else k)
            mag = fmt_rational(abs(c))
            if name:
                body = name if mag == "1" else "%s*%s" % (mag, name)
            else:
                body = mag
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return "ConstantExpr(%s)" % self


def _as_expr(c):
    return c if isinstance(c, ConstantExpr) else ConstantExpr.rational(c)


class AsymptoticSeries:
    """sum_k c_k v^k over strictly decreasing powers, plus log prefactors.

    ``logs`` maps a power m to the coefficient of v^m ln v (so m = 0 is the
    ln N term and m = 1 the N ln N term).
    """

    def __init__(self, variable, terms, logs=None):
        powers = [k for k, _ in terms]
        if any(a <= b for a, b in zip(powers, powers[1:])):
            raise ValueError("powers must be strictly decreasing")
        self.variable = variable
        self.terms = [(k, _as_expr(c)) for k, c in terms]
        self.logs = {m: _as_expr(c) for m, c in (logs or {}).items()}

    def coefficient(self, power):
        for k, c in self.terms:
            if k == power:
                return c
        return ConstantExpr()

    def log_coefficient(self, power):
        return self.logs.get(power, ConstantExpr())

    def truncate(self, lowest):
        """Keep powers >= lowest."""
        return AsymptoticSeries(self.variable, [(k, c) for k, c in self.terms if k >= lowest],
                                self.logs)

    def evaluate(self, value, p, lowest=None):
        work = max(p, 64) + 16
        ctx = context(work)
        v = bf(value, work)
        lv = ctx.log(v)
        acc = ctx.zero
        for m, c in self.logs.items():
            acc += c.evaluate(work) * v ** m * lv
        for k, c in self.terms:
            if lowest is not None and k < lowest:
                break
            acc += c.evaluate(work) * v ** k
        return context(p).mpf(acc)

    def serialize(self):
        """One line per term: power, then the coefficient expression."""
        v = self.variable
        lines = ["%s^%d*ln(%s)\t%s" % (v, m, v, self.logs[m])
                 for m in sorted(self.logs, reverse=True)]
        lines += ["%s^%d\t%s" % (v, k, c) for k, c in self.terms]
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return "AsymptoticSeries(%s, %d terms)" % (self.variable, len(self.terms))
