"""Eynard-Orantin recursion on genus-0 curves in the pole basis.

A correlator w_n^g is stored as a symmetric tensor: the coefficient of
prod_j dz_j / (z_j - a_{i_j})^{k_j} for every ordered index tuple, keyed by
the sorted tuple of (i, k) pairs.  Residues at a ramification point a are
taken in the local coordinate t = q - a, where every ingredient is a
truncated Laurent list.

Kernel:  K(z0, q) = s_K * dE_q(z0) / ((y(q) - y(sigma q)) dx(q)),
dE_q(z0) = 1/2 [1/(z0 - q) - 1/(z0 - sigma q)] dz0, and second slots at
sigma(q).  The orientation s_K = -1 (dE integrated from q to sigma q) is the
one that reproduces F^(2) = 1/240 on the Gaussian curve.
"""

import threading
from collections import defaultdict
from math import comb

from gmpy2 import mpq

from ..numeric import RatFunc, expand
from ..numeric.germ import Germ, InsufficientOrder

MAX_ORDER = 1024


class EngineError(ArithmeticError):
    pass


class Correlator:
    """Pole-basis tensor of w_n^g, or the distinguished w_2^0 / zero w_1^0."""

    __slots__ = ("n", "g", "coeffs", "curve", "kind")

    def __init__(self, n, g, coeffs, curve, kind="tensor"):
        self.n, self.g = n, g
        self.coeffs = coeffs
        self.curve = curve
        self.kind = kind

    def __getitem__(self, key):
        return self.coeffs.get(tuple(sorted(key)), mpq(0))

    def max_order(self, i=None):
        k = 0
        for key in self.coeffs:
            for (j, kk) in key:
                if i is None or j == i:
                    k = max(k, kk)
        return k

    def evaluate(self, zs):
        """Exact value of the coefficient of dz_1...dz_n at rational points."""
        zs = [mpq(z) for z in zs]
        if self.kind == "zero":
            return mpq(0)
        if self.kind == "bergman":
            return 1 / (zs[0] - zs[1]) ** 2
        ram = self.curve.ram
        pw = {}
        acc = mpq(0)
        from itertools import permutations
        for key, c in self.coeffs.items():
            for perm in set(permutations(key)):
                term = c
                for z, (i, k) in zip(zs, perm):
                    d = z - ram[i]
                    if d == 0:
                        raise ZeroDivisionError("evaluation at a pole")
                    term /= d ** k
                acc += term
        return acc

    def serialize(self):
        from ..numeric.rational import fmt_rational
        if self.kind != "tensor":
            return {"n": self.n, "g": self.g, "kind": self.kind, "terms": []}
        terms = [{"indices": [[i, k] for (i, k) in key], "coeff": fmt_rational(c)}
                 for key, c in sorted(self.coeffs.items())]
        return {"n": self.n, "g": self.g, "kind": "tensor", "terms": terms}


class _Local:
    """Per-ramification-point expansions used by the residues."""

    def __init__(self, engine, i, order):
        c = engine.curve
        self.engine = engine
        self.i = i
        self.a = a = c.ram[i]
        self.order = order
        z = RatFunc.z()
        sig = c.sigma_rf()
        self.sigma = sig
        self.s = expand(sig - a, a, order + 2)  # sigma(a + t) - a
        self.sp = expand(sig.derivative(), a, order + 2)
        dy = c.y - c.y_sigma()
        self.W = expand(1 / (dy * c.dx()), a, order + 2)  # 1 / ((y - y o sigma) x')
        self.half_sign = mpq(engine.sign, 2)
        self._kappa = {}
        self._E = {}
        self._Es = {}
        self._pair_res = {}
        self._bergman_B = {}

    # t^m - s(t)^m times W, times s_K/2
    def kappa(self, m):
        g = self._kappa.get(m)
        if g is None:
            tm = Germ.monomial(self.a, m, self.s.prec + m - 1)
            g = (tm - self.s ** m) * self.W * self.half_sign
            self._kappa[m] = g
        return g

    def E(self, b):
        """1 / (a + t - a_j)^k."""
        g = self._E.get(b)
        if g is None:
            j, k = b
            if j == self.i:
                g = Germ.monomial(self.a, -k, self.order)
            else:
                aj = self.engine.curve.ram[j]
                g = expand(RatFunc.const(1) / (RatFunc.z() - aj) ** k, self.a, self.order)
            self._E[b] = g
        return g

    def Es(self, b):
        """sigma'(q) / (sigma(q) - a_j)^k."""
        g = self._Es.get(b)
        if g is None:
            j, k = b
            aj = self.engine.curve.ram[j]
            if j == self.i:
                g = (self.s ** (-k)) * self.sp
            else:
                g = expand(self.sigma.derivative() / (self.sigma - aj) ** k, self.a, self.order)
            self._Es[b] = g
        return g

    def bergman_A(self, l):
        # w_2^0(q, z) = sum_l (l+1) t^l / (z - a)^(l+2)
        return Germ.monomial(self.a, l, self.order, l + 1)

    def bergman_B(self, l):
        g = self._bergman_B.get(l)
        if g is None:
            g = (self.s ** l) * self.sp * (l + 1)
            self._bergman_B[l] = g
        return g

    def residues(self, F):
        """[Res kappa_m F dt for m = 1..] (trailing zeros trimmed)."""
        if F.is_zero():
            if F.prec <= -1 - self.W.val - 1:
                raise InsufficientOrder(-2 - self.W.val, F.prec)
            return []
        out = []
        m = 1
        # val(kappa_m) >= m + val(W); kappa_m may vanish identically for some m
        while m + self.W.val <= -1 - F.val:
            k = self.kappa(m)
            m += 1
            if k.is_zero():
                if k.prec <= -1 - F.val:
                    raise InsufficientOrder(-1 - F.val, k.prec)
                out.append(mpq(0))
                continue
            lo, hi = k.val, -1 - F.val
            if lo > hi:
                out.append(mpq(0))
                continue
            if -1 - lo >= F.prec:
                raise InsufficientOrder(-1 - lo, F.prec)
            if hi >= k.prec:
                raise InsufficientOrder(hi, k.prec)
            acc = mpq(0)
            kc, fc = k.c, F.c
            kv, fv = k.val, F.val
            for e in range(lo, hi + 1):
                ke = e - kv
                fe = -1 - e - fv
                if 0 <= ke < len(kc) and 0 <= fe < len(fc):
                    acc += kc[ke] * fc[fe]
            out.append(acc)
        while out and out[-1] == 0:
            out.pop()
        return out

    def pair_residues(self, b0, b1):
        key = (b0, b1)
        r = self._pair_res.get(key)
        if r is None:
            r = self.residues(self.E(b0) * self.Es(b1))
            self._pair_res[key] = r
        return r


def _remove(tup, b):
    i = tup.index(b)
    return tup[:i] + tup[i + 1:]


def _multiplicity(J, I):
    """Number of position subsets of J whose multiset is I."""
    cJ, cI = defaultdict(int), defaultdict(int)
    for b in J:
        cJ[b] += 1
    for b in I:
        cI[b] += 1
    out = 1
    for b, k in cI.items():
        out *= comb(cJ[b], k)
    return out


class TREngine:
    def __init__(self, curve, sign=-1, min_order=0):
        self.curve = curve
        self.sign = sign
        self.min_order = min_order
        self._memo = {}
        self._lock = threading.Lock()
        self.order = 0
        self._locals = {}
        self.asymmetries = []

    def local(self, i, order):
        loc = self._locals.get((i, order))
        if loc is None:
            loc = _Local(self, i, order)
            self._locals[(i, order)] = loc
        return loc

    def omega(self, n, g):
        if n < 1 or g < 0:
            raise ValueError("need n >= 1, g >= 0")
        if (n, g) == (1, 0):
            return Correlator(1, 0, {}, self.curve, kind="zero")
        if (n, g) == (2, 0):
            return Correlator(2, 0, {}, self.curve, kind="bergman")
        key = (n, g)
        with self._lock:
            hit = self._memo.get(key)
        if hit is not None:
            return hit
        # inputs first (outside the order loop so they memoize independently)
        if g >= 1:
            self.omega(n + 1, g - 1)
        for h in range(g + 1):
            for r in range(n):
                if (n - r, g - h) == (1, 0):
                    continue
                if (r + 1, h) not in ((1, 0), (2, 0)):
                    self.omega(r + 1, h)
        order = max(self.order, 6 * g + 2 * n + 4, self.min_order)
        while True:
            try:
                coeffs = self._recurse(n, g, order)
                break
            except InsufficientOrder:
                order *= 2
                if order > MAX_ORDER:
                    raise EngineError("insufficient germ order for w_%d^%d up to cap %d"
                                      % (n, g, MAX_ORDER))
        self.order = max(self.order, order)
        corr = Correlator(n, g, coeffs, self.curve)
        with self._lock:
            self._memo.setdefault(key, corr)
        return self._memo[key]

    # -- the recursion proper ------------------------------------------------
    def _pieces(self, n, g, loc, which):
        """Germs of w_n^g with one slot at q (A) or sigma(q) (B): {I: germ}."""
        corr = self._memo[(n, g)]
        out = {}
        for S, c in corr.coeffs.items():
            seen = set()
            for b in S:
                if b in seen:
                    continue
                seen.add(b)
                I = _remove(S, b)
                gb = loc.E(b) if which == "A" else loc.Es(b)
                cur = out.get(I)
                out[I] = gb * c if cur is None else cur + gb * c
        return out

    def _recurse(self, n, g, order):
        """Coefficients of w_{n}^{g}: slot 0 from the kernel, J = remaining n-1."""
        nj = n - 1
        out = {}
        producers = defaultdict(set)
        for i in range(len(self.curve.ram)):
            loc = self.local(i, order)
            F = {}          # J -> Germ, product terms and special C term
            CJ = defaultdict(lambda: defaultdict(lambda: mpq(0)))  # J -> (b0,b1) -> coeff
            # C term: w_{n+1}^{g-1}(q, sigma q, J)
            if g >= 1:
                if (nj + 2, g - 1) == (2, 0):
                    sp = RatFunc.z() - loc.sigma
                    G = expand(self.curve.sigma_rf().derivative() / (sp * sp), loc.a, order)
                    F[()] = G
                else:
                    src = self._memo[(nj + 2, g - 1)]
                    for S, c in src.coeffs.items():
                        seen0 = set()
                        for b0 in S:
                            if b0 in seen0:
                                continue
                            seen0.add(b0)
                            S1 = _remove(S, b0)
                            seen1 = set()
                            for b1 in S1:
                                if b1 in seen1:
                                    continue
                                seen1.add(b1)
                                J = _remove(S1, b1)
                                CJ[J][(b0, b1)] += c
            # product terms
            for h in range(g + 1):
                for r in range(nj + 1):
                    n1, g1 = r + 1, h
                    n2, g2 = nj - r + 1, g - h
                    if (n1, g1) == (1, 0) or (n2, g2) == (1, 0):
                        continue
                    if (n1, g1) == (2, 0) and (n2, g2) == (2, 0):
                        A = self._bergman_pieces(loc, "A", 0)
                        B = self._bergman_pieces(loc, "B", 0)
                    elif (n1, g1) == (2, 0):
                        B = self._pieces(n2, g2, loc, "B")
                        A = self._bergman_pieces(loc, "A", self._memo[(n2, g2)].max_order(i))
                    elif (n2, g2) == (2, 0):
                        A = self._pieces(n1, g1, loc, "A")
                        B = self._bergman_pieces(loc, "B", self._memo[(n1, g1)].max_order(i))
                    else:
                        A = self._pieces(n1, g1, loc, "A")
                        B = self._pieces(n2, g2, loc, "B")
                    for I, ga in A.items():
                        for I2, gb in B.items():
                            J = tuple(sorted(I + I2))
                            mult = _multiplicity(J, I)
                            term = ga * gb
                            if mult != 1:
                                term = term * mult
                            cur = F.get(J)
                            F[J] = term if cur is None else cur + term
            # residues
            keys = set(F) | set(CJ)
            for J in keys:
                res = {}
                if J in F:
                    for m, v in enumerate(loc.residues(F[J]), start=1):
                        if v != 0:
                            res[m] = v
                if J in CJ:
                    for (b0, b1), c in CJ[J].items():
                        for m, v in enumerate(loc.pair_residues(b0, b1), start=1):
                            if v != 0:
                                res[m] = res.get(m, 0) + c * v
                for m, v in res.items():
                    if v == 0:
                        continue
                    key = tuple(sorted(((i, m + 1),) + J))
                    producers[key].add((i, m + 1))
                    prev = out.get(key)
                    if prev is None:
                        out[key] = v
                    elif prev != v:
                        self.asymmetries.append((n, g, key, prev, v))
        # every distinct slot value of a nonzero entry must reproduce it
        for key, v in out.items():
            if v != 0 and len(producers[key]) != len(set(key)):
                self.asymmetries.append((n, g, key, v, mpq(0)))
        return {k: v for k, v in out.items() if v != 0}

    def _bergman_pieces(self, loc, which, partner_pole):
        # w_2^0 pieces t^l; beyond l = partner_pole - 2 - val(W) no residue is reached
        L = partner_pole - loc.W.val + 2
        out = {}
        for l in range(L):
            b = (loc.i, l + 2)
            out[(b,)] = loc.bergman_A(l) if which == "A" else loc.bergman_B(l)
        return out

    # -- free energies ---------------------------------------------------------
    def phi(self, i, order):
        """Germ of the primitive of y dx at a_i with zero constant."""
        c = self.curve
        return expand(c.y * c.dx(), c.ram[i], order).integrate()

    def free_energy(self, g, phi_shift=0):
        if g < 2:
            raise ValueError("free_energy needs g >= 2")
        w = self.omega(1, g)
        order = max(self.order, 6 * g + 8, self.min_order)
        while True:
            try:
                total = mpq(0)
                for i in range(len(self.curve.ram)):
                    loc = self.local(i, order)
                    ph = self.phi(i, order) + phi_shift
                    acc = Germ(loc.a, order, [], order)
                    for S, cf in w.coeffs.items():
                        acc = acc + loc.E(S[0]) * cf
                    total += (ph * acc).residue()
                return total / (2 - 2 * g)
            except InsufficientOrder:
                order *= 2
                if order > MAX_ORDER:
                    raise EngineError("insufficient order for F^%d" % g)


_ENGINES = {}
_ENGINES_LOCK = threading.Lock()


def engine_for(curve, sign=-1):
    key = (curve.key, sign)
    with _ENGINES_LOCK:
        eng = _ENGINES.get(key)
        if eng is None:
            eng = TREngine(curve, sign)
            _ENGINES[key] = eng
    return eng


def omega(curve, n, g):
    return engine_for(curve).omega(n, g)


def free_energy(curve, g):
    return engine_for(curve).free_energy(g)


def eval_correlator(corr, points, p):
    """Value of the dz_1...dz_n coefficient at BigFloat points, p bits."""
    from itertools import permutations
    from ..numeric import bf, context
    ctx = context(p)
    zs = [bf(z, p) if not hasattr(z, "_mpf_") else ctx.mpf(z) for z in points]
    if len(zs) != corr.n:
        raise ValueError("need %d points" % corr.n)
    if corr.kind == "zero":
        return ctx.mpf(0)
    if corr.kind == "bergman":
        d = zs[0] - zs[1]
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return 1 / (d * d)
    ram = [bf(a, p) for a in corr.curve.ram]
    for z in zs:
        if any(z == a for a in ram):
            raise ZeroDivisionError("evaluation at a pole")
    acc = ctx.mpf(0)
    for key, c in sorted(corr.coeffs.items()):
        cc = bf(c, p)
        for perm in sorted(set(permutations(key))):
            term = cc
            for z, (i, k) in zip(zs, perm):
                term = term / (z - ram[i]) ** k
            acc += term
    return acc


def serialize_free_energy(g, value):
    from ..numeric.rational import fmt_rational
    return {"g": g, "value": fmt_rational(value)}
