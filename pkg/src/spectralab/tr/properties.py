"""Structural checks on computed correlators.

All checks are exact.  Functions of one free variable are built as RatFuncs
with the remaining arguments frozen at generic rational points.
"""

from itertools import permutations

from gmpy2 import mpq

from ..numeric import Poly, RatFunc, expand
from ..numeric.rational import fmt_rational
from .engine import engine_for

# generic rational points for frozen arguments; avoid every catalog ram point
_PROBES = (mpq(7, 3), mpq(-11, 5), mpq(13, 4), mpq(-17, 6))


def _basis_rf(curve, b):
    j, k = b
    return RatFunc(Poly([1]), Poly([-curve.ram[j], 1]) ** k)


def _frozen_value(curve, rest, pts):
    """Sum over distinct orderings of ``rest`` of prod 1/(w - a)^k."""
    acc = mpq(0)
    for perm in set(permutations(rest)):
        term = mpq(1)
        for w, (j, k) in zip(pts, perm):
            term /= (w - curve.ram[j]) ** k
        acc += term
    return acc


def slot_function(corr, pts):
    """f(z) with w(z, pts) = f(z) dz prod dw."""
    curve = corr.curve
    z = RatFunc.z()
    if corr.kind == "zero":
        return RatFunc.const(0)
    if corr.kind == "bergman":
        return 1 / (z - pts[0]) ** 2
    acc = RatFunc.const(0)
    coef = {}
    for S, c in corr.coeffs.items():
        for b in set(S):
            rest = list(S)
            rest.remove(b)
            coef[b] = coef.get(b, 0) + c * _frozen_value(curve, rest, pts)
    for b, c in sorted(coef.items()):
        if c != 0:
            acc = acc + _basis_rf(curve, b) * c
    return acc


def pair_function(corr, pts):
    """f(z) with w(z, sigma z, pts) = f(z) dz^2 prod dw (sigma' included)."""
    curve = corr.curve
    z = RatFunc.z()
    sig = curve.sigma_rf()
    sp = sig.derivative()
    if corr.kind == "bergman":
        return sp / (z - sig) ** 2
    coef = {}
    for S, c in corr.coeffs.items():
        for b0 in set(S):
            r0 = list(S)
            r0.remove(b0)
            for b1 in set(r0):
                r1 = list(r0)
                r1.remove(b1)
                coef[(b0, b1)] = coef.get((b0, b1), 0) + c * _frozen_value(curve, r1, pts)
    acc = RatFunc.const(0)
    for (b0, b1), c in sorted(coef.items()):
        if c != 0:
            acc = acc + _basis_rf(curve, b0) * _basis_rf(curve, b1).compose(sig) * sp * c
    return acc


def _sigma_pull(f, curve):
    """f(sigma z) sigma'(z): the pullback of a one-form coefficient."""
    sig = curve.sigma_rf()
    return f.compose(sig) * sig.derivative()


def loop_equation(curve, n, g, engine=None):
    """Quadratic loop equation for w_n^g with n - 1 frozen arguments.

    Returns (sigma_invariant, {ram point: valuation of Q/x'^2}).
    """
    eng = engine or engine_for(curve)
    pts = _PROBES[: n - 1]
    x1 = curve.dx()
    # the kernel orientation fixes which sheet function the recursion solves for
    ydx = curve.y * x1 * eng.sign

    def one(nn, gg, sub):
        if (nn, gg) == (1, 0):
            return ydx
        return slot_function(eng.omega(nn, gg), list(sub))

    idx = list(range(n - 1))
    Q = RatFunc.const(0)
    if g >= 1:
        Q = Q + pair_function(eng.omega(n + 1, g - 1), pts)
    from itertools import combinations
    for h in range(g + 1):
        for r in range(n):
            for I in combinations(idx, r):
                rest = [j for j in idx if j not in I]
                A = one(r + 1, h, [pts[j] for j in I])
                B = one(len(rest) + 1, g - h, [pts[j] for j in rest])
                Q = Q + A * _sigma_pull(B, curve)
    sig = curve.sigma_rf()
    inv = (Q.compose(sig) * sig.derivative() ** 2 - Q).is_zero()
    P = Q / (x1 * x1)
    vals = {a: expand(P, a, 1).val for a in curve.ram}
    return inv, vals


def edge_kinds(curve):
    """'soft' or 'hard' per ramification point (order of y - y o sigma)."""
    dy = curve.y - curve.y_sigma()
    return {a: ("hard" if expand(dy, a, 1).val < 0 else "soft") for a in curve.ram}


def dilaton(curve, n, g, engine=None):
    """Compare sum_i Res Phi w_{n+1}^g with w_n^g and (2-2g-n) w_n^g."""
    eng = engine or engine_for(curve)
    up = eng.omega(n + 1, g)
    base = eng.omega(n, g)
    order = max(up.max_order() + 2, 4)
    phis = [eng.phi(i, order) for i in range(len(curve.ram))]
    D = {}
    for S, c in up.coeffs.items():
        for b0 in set(S):
            j, k = b0
            r = phis[j].coeff(k - 1)
            if r == 0:
                continue
            J = list(S)
            J.remove(b0)
            J = tuple(J)
            D[J] = D.get(J, 0) + c * r
    D = {k: v for k, v in D.items() if v != 0}
    pref = 2 - 2 * g - n
    plain = D == base.coeffs
    scaled = D == {k: v * pref for k, v in base.coeffs.items() if v * pref != 0}
    ratios = {D.get(k, 0) / v for k, v in base.coeffs.items()}
    ratio = ratios.pop() if len(ratios) == 1 and set(D) <= set(base.coeffs) else None
    if plain and not scaled:
        verdict = "unit prefactor"
    elif scaled and not plain:
        verdict = "(2-2g-n) prefactor"
    elif plain and scaled:
        verdict = "both (degenerate)"
    elif ratio is not None and ratio == -pref:
        verdict = "-(2-2g-n) prefactor"
    else:
        verdict = "neither"
    return {"n": n, "g": g, "matches_plain": plain, "matches_scaled": scaled,
            "ratio": ratio, "verdict": verdict}


def check_properties(curve, n_max, g_max, engine=None, budget=None):
    """Run the property suite; failures are report entries, never raised.

    ``budget`` restricts every per-(n, g) check to n + 2g <= budget.
    """
    eng = engine or engine_for(curve)
    kinds = edge_kinds(curve)
    rows = []
    for g in range(g_max + 1):
        for n in range(1, n_max + 1):
            if 2 * g - 2 + n <= 0 or (budget is not None and n + 2 * g > budget):
                continue
            w = eng.omega(n, g)
            asym = [a for a in eng.asymmetries if a[:2] == (n, g)]
            rows.append({"check": "symmetry", "n": n, "g": g, "pass": not asym,
                         "detail": "" if not asym else str(asym[0])})
            bad = [S for S in w.coeffs if any(k < 2 for _, k in S)]
            rows.append({"check": "residue_free", "n": n, "g": g, "pass": not bad,
                         "detail": "" if not bad else str(bad[0])})
            inv, vals = loop_equation(curve, n, g, eng)
            ok = inv and all(v >= 0 for v in vals.values())
            detail = "sigma-invariant=%s valuations=%s" % (
                inv, {fmt_rational(a): v for a, v in vals.items()})
            rows.append({"check": "loop_equation", "n": n, "g": g, "pass": ok,
                         "detail": detail})
            # at a hard wall the boundary term allows one simple pole in x
            hard = [a for a, k in kinds.items() if k == "hard"]
            if hard:
                ok_h = inv and all(vals[a] >= (-2 if a in hard else 0) for a in vals)
                rows.append({"check": "loop_equation_hard_edge_form", "n": n, "g": g,
                             "pass": ok_h, "detail": detail})
    for g in range(2, g_max + 1):
        if budget is not None and 2 * g > budget:
            continue
        F = eng.free_energy(g)
        F2 = eng.free_energy(g, phi_shift=mpq(5, 7))
        rows.append({"check": "phi_basepoint", "n": 0, "g": g, "pass": F == F2,
                     "detail": "F=%s shifted=%s" % (fmt_rational(F), fmt_rational(F2))})
    # dilaton: recorded, and required to be a single uniform prefactor
    for g in range(1, g_max + 1):
        if budget is not None and 1 + 2 * g > budget + 1:
            continue
        d = dilaton(curve, 1, g, eng)
        rows.append({"check": "dilaton", "n": 1, "g": g,
                     "pass": d["ratio"] is not None,
                     "detail": "%s (ratio %s)" % (d["verdict"], d["ratio"])})
    return rows
