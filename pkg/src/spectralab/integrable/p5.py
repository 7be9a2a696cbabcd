"""The sine-kernel tau function from the Painleve V sigma-form, order by order.

In the variable t the sigma-form reads

    -(hbar_t t sigma'')^2 + (t sigma' - sigma)(t sigma' - sigma - 4 sigma'^2) = 0.

Put t = -2 pi i s, sigma_hat(s) = sigma(t), hbar_t = i pi hbar and
sigma_hat = pi^2 u.  Every monomial then carries pi^4 and the equation is

    -hbar^2 (s u'')^2 + 4 (s u' - u)(s u' - u + u'^2) = 0.

u = sum_k u_k hbar^(2k) with u_0 = -s^2/4 (the singular solution of the
Clairaut factor), and s dF^(g)/ds = u_g.
"""

from dataclasses import dataclass, field

from gmpy2 import mpq

from ..numeric import Poly, RatFunc
from ..numeric.hbar import HbarSeries

# monomials of the sigma-form in sigma_hat: (coefficient, power of hbar_t,
# power of pi, [derivative orders of the sigma_hat factors], power of s)
_T_FORM = (
    # -hbar_t^2 (t sigma'')^2 = hbar_t^2 (s sh'')^2 / (4 pi^2); overall factor 4
    (mpq(1), 2, -2, (2, 2), 2),
    # 4 (s sh' - sh)^2
    (mpq(4), 0, 0, (1, 1), 2), (mpq(-8), 0, 0, (1, 0), 1), (mpq(4), 0, 0, (0, 0), 0),
    # 4 (s sh' - sh) sh'^2 / pi^2
    (mpq(4), 0, -2, (1, 1, 1), 1), (mpq(-4), 0, -2, (0, 1, 1), 0),
)


class DegenerateOrder(ArithmeticError):
    pass


def pi_balance():
    """Powers of pi per monomial after sigma_hat = pi^2 u, hbar_t = i pi hbar.

    Returns the set of exponents (a single value when the pi factors
    cancel) and the sign picked up by the hbar^2 term.
    """
    exps = set()
    for coeff, h, pi, ders, _ in _T_FORM:
        exps.add(pi + 2 * len(ders) + h)   # each sigma_hat gives pi^2, hbar_t^h gives pi^h
    sign = -1   # (i)^2
    return exps, sign


def _hbar_powers_even():
    return all(h % 2 == 0 for _, h, _, _, _ in _T_FORM)


@dataclass
class SigmaSeries:
    """u = sum_k u[k] hbar^(2k), sigma_hat = pi^2 u."""
    u: list
    convention: dict = field(default_factory=dict)

    def as_hbar_series(self):
        coeffs = []
        for k, c in enumerate(self.u):
            coeffs.append(c)
            if k + 1 < len(self.u):
                coeffs.append(RatFunc.const(0))
        return HbarSeries(0, coeffs, 2 * len(self.u) - 1)

    def residual(self):
        """hbar^(2k) coefficients of the s-form for k < len(u)."""
        return [_order_coeff(self.u, k) for k in range(len(self.u))]


def _d(f, n):
    for _ in range(n):
        f = f.derivative()
    return f


def _order_coeff(u, k):
    """hbar^(2k) coefficient of -hbar^2 (s u'')^2 + 4 A B with A = s u' - u
    and B = A + u'^2; u_i beyond the list count as zero."""
    s = RatFunc.z()
    zero = RatFunc.const(0)
    get = lambda i: u[i] if i < len(u) else zero   # noqa: E731
    acc = RatFunc.const(0)
    for a in range(k):
        acc = acc - s * s * _d(get(a), 2) * _d(get(k - 1 - a), 2)
    for i in range(k + 1):
        j = k - i
        Ai = s * get(i).derivative() - get(i)
        Bj = s * get(j).derivative() - get(j)
        for a in range(j + 1):
            Bj = Bj + get(a).derivative() * get(j - a).derivative()
        acc = acc + 4 * Ai * Bj
    return acc


def solve_sigma(k_max):
    """u_0 .. u_{k_max} in Q(s)."""
    exps, _ = pi_balance()
    if len(exps) != 1:
        raise ArithmeticError("pi factors do not cancel: exponents %s" % sorted(exps))
    if not _hbar_powers_even():
        raise ArithmeticError("odd power of hbar in the sigma-form")
    s = RatFunc.z()
    u = [RatFunc(Poly([0, 0, mpq(-1, 4)]))]
    # linearization at u_0: 4 A_0 dB = 4 (-s^2/4)(-du) = s^2 du
    lin = s * s
    for k in range(1, k_max + 1):
        rest = _order_coeff(u, k)
        if lin.is_zero():
            raise DegenerateOrder("linear coefficient vanishes at order %d" % k)
        u.append(-rest / lin)
    conv = {"t": "-2*pi*i*s", "hbar_t": "i*pi*hbar", "sigma_hat": "pi^2*u",
            "u0": "-s^2/4 (singular solution of u = s u' + u'^2)"}
    return SigmaSeries(u, conv)


def _antiderivative_laurent(f):
    """Antiderivative of a Laurent polynomial in s given as a RatFunc with a
    monomial denominator.  Returns (RatFunc, coefficient of ln s)."""
    den = f.den
    if any(c != 0 for c in den.c[:-1]):
        raise ArithmeticError("u_g / s is not a Laurent polynomial")
    m = den.degree
    scale = 1 / den.c[-1]
    num_out = [mpq(0)] * (len(f.num.c) + 1)
    log_c = mpq(0)
    for i, c in enumerate(f.num.c):
        e = i - m          # power of s
        c = c * scale
        if c == 0:
            continue
        if e == -1:
            log_c += c
        else:
            num_out[i + 1] = c / (e + 1)
    # sum c' s^(i+1-m) = s^(-m) * sum c' s^(i+1): keep denominator s^m
    return RatFunc(Poly(num_out), Poly([0] * m + [1])), log_c


@dataclass
class P5Result:
    sigma: SigmaSeries
    F: dict          # g -> RatFunc in s (g >= 2), F[0] as RatFunc, F[1] as log coeff
    engine: dict     # (g, s) -> (series value, engine value)
    g5: object       # adjudicated F^(5) at s = 1, or None

    def all_match(self):
        return all(a == b for a, b in self.engine.values())


def p5_tau_series(g_max=5, s_values=(1, 2), engine_g=(2, 3, 4), cross_check=True):
    """F^(g) from the sigma-form and the engine cross-check on sine(s)."""
    if not 1 <= g_max <= 5:
        raise ValueError("g_max in 1..5")
    sig = solve_sigma(g_max)
    s = RatFunc.z()
    F = {}
    for g in range(g_max + 1):
        Fg, lc = _antiderivative_laurent(sig.u[g] / s)
        if lc != 0 and g != 1:
            raise ArithmeticError("log term at g = %d" % g)
        F[g] = lc if g == 1 else Fg
    engine = {}
    g5 = None
    if cross_check:
        from ..curves import catalog
        from ..tr import free_energy
        for sv in s_values:
            for g in engine_g:
                if g <= g_max:
                    eng = free_energy(catalog("sine", {"s": sv}), g)
                    engine[(g, mpq(sv))] = (F[g](mpq(sv)), mpq(eng))
    if g_max >= 5:
        g5 = F[5](mpq(1))
    return P5Result(sig, F, engine, g5)


def adjudicate_g5(result=None):
    """Which printed F^(5) the sigma-form supports: label and value at s = 1."""
    from ..closed_forms.oracles import SINE_G5
    res = result or p5_tau_series(5, cross_check=False)
    for label, v in SINE_G5.items():
        if res.g5 == v:
            return label, v
    return None, res.g5
