"""Binary floating point at caller-chosen precision.

Values are mpmath ``mpf`` objects created inside a private ``MPContext``
per precision, so no global precision state is touched.
"""

from functools import lru_cache

import mpmath
from mpmath.libmp import from_man_exp

from .rational import Rational


class PrecisionError(ArithmeticError):
    """A computation could not be completed reliably at the given precision."""


@lru_cache(maxsize=None)
def context(p):
    if p < 2:
        raise ValueError("precision must be at least 2 bits")
    ctx = mpmath.MPContext()
    ctx.prec = int(p)
    return ctx


def bf(value, p):
    """Round ``value`` (int, Rational, str, float or mpf) to ``p`` bits."""
    ctx = context(p)
    if isinstance(value, Rational):
        return ctx.mpf(int(value.numerator)) / ctx.mpf(int(value.denominator))
    if isinstance(value, str) and value.lower().lstrip("+-").startswith("0x"):
        return from_hex(value, p)
    return ctx.mpf(value)


def to_hex(x):
    """Exact hex-float text: [-]0x<mantissa>p<exponent> (value = m * 2**e)."""
    x = mpmath.mpf(x) if not hasattr(x, "_mpf_") else x
    sign, man, exp, _ = x._mpf_
    if not man:
        if x != x:
            return "nan"
        if x == 0:
            return "0x0p0"
        return "-inf" if x < 0 else "inf"
    return "%s0x%xp%d" % ("-" if sign else "", man, exp)


def from_hex(text, p):
    ctx = context(p)
    s = text.strip()
    if s in ("inf", "+inf"):
        return ctx.inf
    if s == "-inf":
        return -ctx.inf
    if s == "nan":
        return ctx.nan
    neg = s.startswith("-")
    s = s.lstrip("+-")
    if not s.lower().startswith("0x") or "p" not in s:
        raise ValueError("bad hex float: " + repr(text))
    m, e = s[2:].split("p")
    v = ctx.make_mpf(from_man_exp(int(m, 16), int(e), ctx.prec, "n"))
    return -v if neg else v


def to_rational(x):
    """Exact rational value of a finite mpf."""
    from gmpy2 import mpq
    sign, man, exp, _ = x._mpf_
    v = mpq(int(man)) * (mpq(2) ** exp)
    return -v if sign else v
