"""Bernoulli numbers and the few transcendental constants the lab needs."""

from functools import lru_cache
from math import comb

from gmpy2 import mpq

from .bigfloat import bf, context


@lru_cache(maxsize=1)
def _bernoulli_table():
    return [mpq(1)]


def bernoulli(m):
    """B_m from sum_{j<=n} C(n+1, j) B_j = 0 (so B_1 = -1/2)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m > 1 and m % 2:
        return mpq(0)
    table = _bernoulli_table()
    for n in range(len(table), m + 1):
        acc = mpq(0)
        for j in range(n):
            acc += comb(n + 1, j) * table[j]
        table.append(-acc / (n + 1))
    return table[m]


def ln_glaisher(p):
    """ln A from its defining limit, with the Euler-Maclaurin tail.

    sum_{k<=n} k ln k = (n^2/2 + n/2 + 1/12) ln n - n^2/4 + ln A
                        - sum_{j>=2} B_2j / (2j(2j-1)(2j-2)) n^(2-2j)
    """
    work = p + 32
    ctx = context(work)
    n = max(40, work // 4)
    s = ctx.fsum(k * ctx.log(k) for k in range(2, n + 1))
    ln_n = ctx.log(n)
    nn = ctx.mpf(n)
    val = s - (nn * nn / 2 + nn / 2 + ctx.mpf(1) / 12) * ln_n + nn * nn / 4
    eps = ctx.ldexp(1, -work)
    j = 2
    while True:
        b = bernoulli(2 * j)
        term = bf(b / (2 * j * (2 * j - 1) * (2 * j - 2)), work) / nn ** (2 * j - 2)
        val += term
        if abs(term) < eps * abs(val):
            break
        j += 1
    return bf(val, p)


def constant(name, p):
    """pi, ln2 or zeta_prime_minus1 rounded to p bits (p >= 64)."""
    if p < 64:
        raise ValueError("constants need p >= 64")
    ctx = context(p)
    if name == "pi":
        return +ctx.pi
    if name == "ln2":
        return +ctx.ln2
    if name == "zeta_prime_minus1":
        work = p + 16
        lnA = ln_glaisher(work)
        return bf(bf(mpq(1, 12), work) - lnA, p)
    raise KeyError("unknown constant: " + repr(name))
