"""Exact rationals.

The scalar type is gmpy2's ``mpq``: always gcd-reduced with a positive
denominator, so structural equality is mathematical equality.
"""

from gmpy2 import mpq, mpz

Rational = type(mpq(0))


def Q(num, den=1):
    """Build a Rational from ints, strings ("p/q"), Fractions or mpq."""
    if isinstance(num, str):
        num = parse_rational(num)
    if isinstance(num, float):
        raise TypeError("refusing to build an exact rational from a float")
    if den == 1:
        return mpq(num)
    return mpq(num) / mpq(den)


def parse_rational(text):
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    if "/" in s:
        p, q = s.split("/", 1)
        q = mpz(q.strip())
        if q == 0:
            raise ZeroDivisionError("zero denominator in " + repr(text))
        return mpq(mpz(p.strip()), q)
    if any(c in s for c in ".eE"):
        raise ValueError("not an exact rational: " + repr(text))
    return mpq(mpz(s))


def fmt_rational(r):
    """Serialize as "p/q" (integers as "p")."""
    r = mpq(r)
    if r.denominator == 1:
        return str(r.numerator)
    return "%d/%d" % (r.numerator, r.denominator)


def is_rational(v):
    return isinstance(v, (Rational, int)) and not isinstance(v, bool)


def rational_sqrt(r):
    """Exact square root of a non-negative rational, or None."""
    r = mpq(r)
    if r < 0:
        return None
    import gmpy2
    n, d = r.numerator, r.denominator
    if not (gmpy2.is_square(n) and gmpy2.is_square(d)):
        return None
    return mpq(gmpy2.isqrt(n), gmpy2.isqrt(d))
