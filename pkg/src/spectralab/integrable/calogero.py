"""Calogero-Moser particles: RK4 trajectories and conserved traces.

H = sum p_i^2 - sum_{i != j} 1/(q_i - q_j)^2 with the flow q' = p,
p' = -sum_j 2/(q_i - q_j)^3, which is the Hamilton flow of H/2.
"""

import time
from dataclasses import dataclass, field

from gmpy2 import mpq

from ..numeric import bf, context


class CollisionError(ArithmeticError):
    pass


def _num(v, p):
    if isinstance(v, str) and "/" in v:
        v = mpq(v)
    return bf(v, p)


def p_matrix(q, p):
    """P_ii = p_i, P_ij = 1/(q_i - q_j)."""
    n = len(q)
    return [[p[i] if i == j else 1 / (q[i] - q[j]) for j in range(n)] for i in range(n)]


def l_matrix(q):
    """L_ij = 1/(q_i - q_j), L_ii = -sum_k L_ik."""
    n = len(q)
    L = [[0 if i == j else 1 / (q[i] - q[j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        L[i][i] = -sum(L[i][k] for k in range(n) if k != i)
    return L


def _matmul(A, B):
    n = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _matpow(A, k):
    n = len(A)
    out = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(k):
        out = _matmul(out, A)
    return out


def m_matrix(q, k):
    """M^(k)_ij = k/(q_i - q_j) [L^(k-1)]_ij, M_ii = -sum_j M_ij."""
    n = len(q)
    Lk = _matpow(l_matrix(q), k - 1)
    M = [[0 if i == j else k * Lk[i][j] / (q[i] - q[j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        M[i][i] = -sum(M[i][j] for j in range(n) if j != i)
    return M


def traces(q, p, kmax):
    """H_k = Tr P^k for k = 1 .. kmax."""
    P = p_matrix(q, p)
    out = []
    acc = P
    for k in range(1, kmax + 1):
        if k > 1:
            acc = _matmul(acc, P)
        out.append(sum(acc[i][i] for i in range(len(q))))
    return out


def hamiltonian(q, p):
    n = len(q)
    return (sum(x * x for x in p)
            - sum(1 / (q[i] - q[j]) ** 2 for i in range(n) for j in range(n) if i != j))


def force(q, sign=-1):
    """p' = sign * sum_j 2/(q_i - q_j)^3; sign = -1 is the flow of H/2."""
    n = len(q)
    return [sign * sum(2 / (q[i] - q[j]) ** 3 for j in range(n) if j != i) for i in range(n)]


@dataclass
class CalogeroReport:
    N: int
    dt: object
    steps: int
    p: int
    initial: list              # H_1 .. H_N at t = 0
    final: list
    drift: list                # |H_k(t) - H_k(0)| / |H_k(0)|, max over the run
    lax_residual: object       # max |dP/dt - (1/2)[M^(2), P]| by central differences
    min_gap: object
    elapsed: float
    trajectory: list = field(default_factory=list)   # (t, q, p) every ``record`` steps

    @property
    def max_drift(self):
        return max(self.drift)


def _rk4_step(q, p, dt, sign):
    n = len(q)

    def f(qq, pp):
        return pp, force(qq, sign)

    k1q, k1p = f(q, p)
    k2q, k2p = f([q[i] + dt / 2 * k1q[i] for i in range(n)], [p[i] + dt / 2 * k1p[i] for i in range(n)])
    k3q, k3p = f([q[i] + dt / 2 * k2q[i] for i in range(n)], [p[i] + dt / 2 * k2p[i] for i in range(n)])
    k4q, k4p = f([q[i] + dt * k3q[i] for i in range(n)], [p[i] + dt * k3p[i] for i in range(n)])
    qn = [q[i] + dt / 6 * (k1q[i] + 2 * k2q[i] + 2 * k3q[i] + k4q[i]) for i in range(n)]
    pn = [p[i] + dt / 6 * (k1p[i] + 2 * k2p[i] + 2 * k3p[i] + k4p[i]) for i in range(n)]
    return qn, pn


def _min_gap(q):
    s = sorted(q)
    return min(b - a for a, b in zip(s, s[1:]))


def _lax_residual(q, p, dt, sign):
    """Central difference of P along the flow against (1/2)[M^(2), P]."""
    h = dt
    qa, pa = _rk4_step(q, p, h, sign)
    qb, pb = _rk4_step(q, p, -h, sign)
    Pa, Pb = p_matrix(qa, pa), p_matrix(qb, pb)
    P, M = p_matrix(q, p), m_matrix(q, 2)
    MP, PM = _matmul(M, P), _matmul(P, M)
    n = len(q)
    return max(abs((Pa[i][j] - Pb[i][j]) / (2 * h) - (MP[i][j] - PM[i][j]) / 2)
               for i in range(n) for j in range(n))


def calogero_run(q0, p0, dt, t_max, p=128, sign=-1, collision_gap=None, record=0):
    """Integrate with classic RK4 at p bits and report the drift of Tr P^k."""
    t0 = time.perf_counter()
    ctx = context(p)
    q = [_num(v, p) for v in q0]
    mom = [_num(v, p) for v in p0]
    N = len(q)
    if N < 2 or len(mom) != N:
        raise ValueError("need N >= 2 positions and momenta")
    if len(set(q)) != N:
        raise ValueError("initial positions must be distinct")
    dt = _num(dt, p)
    gap_min = bf(collision_gap if collision_gap is not None else "1e-3", p)
    steps = int(ctx.nint(_num(t_max, p) / dt))
    H0 = traces(q, mom, N)
    drift = [ctx.zero] * N
    lax = _lax_residual(q, mom, ctx.mpf("1e-6") if p > 100 else dt, sign)
    min_gap = _min_gap(q)
    traj = [(ctx.zero, list(q), list(mom))] if record else []
    for s in range(1, steps + 1):
        q, mom = _rk4_step(q, mom, dt, sign)
        g = _min_gap(q)
        min_gap = min(min_gap, g)
        if g < gap_min:
            raise CollisionError("particles within %s at t = %s" % (ctx.nstr(g, 5), ctx.nstr(s * dt, 8)))
        H = traces(q, mom, N)
        for k in range(N):
            den = abs(H0[k]) if H0[k] != 0 else ctx.one
            drift[k] = max(drift[k], abs(H[k] - H0[k]) / den)
        if record and s % record == 0:
            traj.append((s * dt, list(q), list(mom)))
    lax = max(lax, _lax_residual(q, mom, ctx.mpf("1e-6") if p > 100 else dt, sign))
    return CalogeroReport(N, dt, steps, p, H0, traces(q, mom, N), drift, lax, min_gap,
                          time.perf_counter() - t0, traj)


DEFAULT_Q0 = ("-2", "0", "5/2")
DEFAULT_P0 = ("-1", "1/10", "6/5")


def halving_ratio(q0=DEFAULT_Q0, p0=DEFAULT_P0, dt="1e-3", t_max=1, p=128):
    """Conservation error at dt over that at dt/2 (about 16 for RK4)."""
    a = calogero_run(q0, p0, dt, t_max, p)
    b = calogero_run(q0, p0, _num(dt, p) / 2, t_max, p)
    return a.max_drift / b.max_drift, a, b
