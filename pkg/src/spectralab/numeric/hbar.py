"""Formal series in hbar with coefficients in any ring (Rational, RatFunc...)."""


class HbarSeries:
    """sum_{k=lo}^{prec-1} c[k-lo] hbar^k + O(hbar^prec)."""

    __slots__ = ("lo", "c", "prec")

    def __init__(self, lo, coeffs, prec):
        self.lo = lo
        self.c = list(coeffs)[: max(prec - lo, 0)]
        self.prec = prec

    def coeff(self, k):
        if k >= self.prec:
            raise IndexError("hbar^%d beyond truncation %d" % (k, self.prec))
        i = k - self.lo
        return self.c[i] if 0 <= i < len(self.c) else 0

    def __add__(self, o):
        lo = min(self.lo, o.lo)
        prec = min(self.prec, o.prec)
        return HbarSeries(lo, [self.coeff(k) + o.coeff(k) for k in range(lo, prec)], prec)

    def __mul__(self, o):
        if not isinstance(o, HbarSeries):
            return HbarSeries(self.lo, [v * o for v in self.c], self.prec)
        lo = self.lo + o.lo
        prec = min(self.prec + o.lo, o.prec + self.lo)
        out = []
        for k in range(lo, prec):
            acc = 0
            for i in range(self.lo, k - o.lo + 1):
                a = self.coeff(i)
                if a != 0:
                    acc = acc + a * o.coeff(k - i)
            out.append(acc)
        return HbarSeries(lo, out, prec)

    def valuation(self):
        for i, v in enumerate(self.c):
            if v != 0:
                return self.lo + i
        return self.prec

    def __repr__(self):
        return "HbarSeries(%d, %r, O(hbar^%d))" % (self.lo, self.c, self.prec)
