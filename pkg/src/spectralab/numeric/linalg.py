"""High-precision Cholesky log-determinant."""

from .bigfloat import PrecisionError, bf, context


class NotPositiveDefinite(PrecisionError):
    """A Cholesky pivot was <= 0 at the working precision."""

    def __init__(self, index, p):
        super().__init__("not numerically positive definite at %d bits (pivot %d)" % (p, index))
        self.index = index
        self.p = p


def cholesky_pivots(matrix, p):
    """Squared pivots d_k of A = L D L^T (so det A = prod d_k)."""
    n = len(matrix)
    a = [[bf(matrix[i][j], p) for j in range(i + 1)] for i in range(n)]
    piv = []
    for k in range(n):
        d = a[k][k]
        if not d > 0:
            raise NotPositiveDefinite(k, p)
        piv.append(d)
        inv = 1 / d
        col = [a[i][k] for i in range(k + 1, n)]
        for ii, i in enumerate(range(k + 1, n)):
            f = col[ii] * inv
            row = a[i]
            for jj, j in enumerate(range(k + 1, i + 1)):
                row[j] -= f * col[jj]
    return piv


def lndet_posdef(matrix, p):
    """ln det of a symmetric positive-definite matrix: 2 * sum ln(pivot)."""
    return lndet_with_floor(matrix, p)[0]


def lndet_with_floor(matrix, p):
    """(ln det, smallest squared pivot)."""
    ctx = context(p)
    piv = cholesky_pivots(matrix, p)
    # LDL^T pivots are squares of the Cholesky diagonal, so this is 2 sum ln l_kk
    return ctx.fsum(ctx.log(d) for d in piv), (min(piv) if piv else ctx.one)
