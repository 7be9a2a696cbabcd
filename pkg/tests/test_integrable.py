import json

import mpmath
import pytest
from gmpy2 import mpq

from spectralab import integrable as I
from spectralab.integrable.calogero import force
from spectralab.numeric.bigfloat import context


@pytest.mark.parametrize("name", I.NAMES)
def test_structural_identities(name):
    pair = I.lax_catalog(name)
    for env in I.random_points(5, seed=1):
        for label, e in pair.structural_identities().items():
            try:
                assert e.eval(env) == 0, label
            except ZeroDivisionError:
                continue


@pytest.mark.parametrize("name", I.NAMES)
def test_zero_curvature_exact(name):
    worst, used = I.sample_compatibility(name, 12, seed=3)
    assert worst == 0 and len(used) == 12


@pytest.mark.parametrize("name", I.NAMES)
def test_perturbed_flow_breaks_compatibility(name):
    worst, _ = I.sample_compatibility(name, 6, seed=3, pdot_shift=1)
    assert worst != 0


@pytest.mark.parametrize("name", I.NAMES)
def test_hamiltonian_gives_painleve(name):
    pair = I.lax_catalog(name)
    assert I.hamilton_painleve_residual(pair, I.random_points(8, seed=4)) == 0


@pytest.mark.parametrize("q0,theta", [(1, -4), (2, -18), (mpq(1, 3), 5)])
def test_p2_spectral_curve(q0, theta):
    c, lead = I.lax_spectral_curve("P2", q0, theta)
    assert c.minus_det() == I.p2_curve_target(q0, theta)
    assert lead["p"] == -lead["q"] ** 2 - lead["t"] / 2


def test_p1_spectral_curve():
    c, lead = I.lax_spectral_curve("P1", mpq(2, 3))
    assert c.minus_det() == I.p1_curve_target(lead["q"], lead["p"], lead["t"])


def test_leading_constraint_enforced():
    with pytest.raises(ValueError):
        I.leading_data("P2", 1, -4, t=7)
    with pytest.raises(I.ExcludedDivisor):
        I.leading_data("P2", 0, 1)


@pytest.mark.parametrize("theta,q0", [(-4, 1), (-18, 2), (mpq(-9, 2), mpq(1, 2))])
def test_w2_is_bergman(theta, q0):
    r = I.p2_w2_check(theta, q0)
    assert r.passed
    assert not r.literal_one_term


def test_w2_needs_rational_mass():
    with pytest.raises(I.ExcludedDivisor):
        I.p2_w2_check(3, mpq(1, 2))


@pytest.mark.parametrize("k", [2, 4, 6])
def test_wkb_residual_valuation(k):
    assert I.p2_wkb(-4, k).residual_valuation() > k


def test_p5_tau_series():
    res = I.p5_tau_series(4, s_values=(1, 3), engine_g=(2, 3, 4))
    assert res.all_match() and len(res.engine) == 6
    exps, sign = I.pi_balance()
    assert len(exps) == 1 and sign == -1


def test_adjudicate_g5():
    label, v = I.adjudicate_g5()
    assert (label, v) == ("local_expansion", mpq(-6575, 16))


def test_calogero_conserves_traces():
    rep = I.calogero_run(I.DEFAULT_Q0, I.DEFAULT_P0, "1e-3", 1, 128)
    assert rep.max_drift < 1e-10
    assert rep.lax_residual < 1e-8
    q = [context(128).mpf(v) for v in (-2, 0, 2.5)]
    H2 = I.traces(q, [context(128).mpf(v) for v in (-1, 0.1, 1.2)], 2)[1]
    assert abs(H2 - I.hamiltonian(q, [context(128).mpf(v) for v in (-1, 0.1, 1.2)])) < 1e-30


def test_calogero_wrong_sign_drifts():
    rep = I.calogero_run(I.DEFAULT_Q0, I.DEFAULT_P0, "1e-3", 1, 128, sign=1)
    assert rep.max_drift > 1e-3


def test_calogero_force_against_mpmath_gradient():
    mp = mpmath.mp.clone()
    mp.prec = 100
    q = [mp.mpf(-1), mp.mpf("0.3"), mp.mpf(2)]

    def V(*x):
        return -sum(1 / (x[i] - x[j]) ** 2 for i in range(3) for j in range(3) if i != j)

    for i, f in enumerate(force(q)):
        grad = mp.diff(lambda t: V(*[t if k == i else q[k] for k in range(3)]), q[i])
        assert abs(f + grad / 2) < mp.mpf(10) ** -20


def test_halving_ratio_is_fourth_order():
    ratio, _, _ = I.halving_ratio(dt="1/100", t_max=1, p=96)
    assert 14 < ratio < 18


def test_collision_detected():
    with pytest.raises(I.CollisionError):
        I.calogero_run(("0", "1"), ("1", "-1"), "1e-2", 3, 64, collision_gap="1e-1")


def test_fredholm_trivial_and_monotone():
    assert I.fredholm_sine("1", 0) == 1
    vals = [I.fredholm_sine(s, 1, 30, 64) for s in ("1/4", "1/2", "1", "3/2")]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        I.fredholm_sine("1", 1, 10)
    with pytest.raises(ValueError):
        I.fredholm_sine("-1", 1)


def test_fredholm_two_routes():
    for s in ("1/2", "1"):
        a = I.fredholm_sine(s, "1/2", 40, 96)
        run = I.sigma_ode_solve(s, "1/2", 96)
        assert abs(a - run.E) < 1e-10
        assert run.max_residual < 1e-10


def test_small_gap_expansion():
    ctx = context(128)
    s = ctx.mpf("1e-3")
    E = I.fredholm_sine("1e-3", 1, 20)
    # 1 - s + (pi^2/36) s^4 + ...
    assert abs(E - (1 - s)) < s ** 3


def test_universal_w2_limits():
    ctx = context(96)
    for e in I.ENSEMBLES:
        assert abs(I.universal_w2(0, e, 96)) < ctx.mpf(2) ** -80
        assert abs(I.universal_w2(60, e, 96) - 1) < 1e-2
    assert abs(I.universal_w2("1/2", "hermitian", 96) - (1 - 4 / ctx.pi ** 2)) < ctx.mpf(2) ** -90
    with pytest.raises(ValueError):
        I.universal_w2(1, "unitary")


def test_real_symmetric_linear_repulsion():
    # small-r slope of W2 is linear for the real-symmetric form, quadratic for Hermitian
    r1, r2 = I.universal_w2("1/1000", "real_symmetric", 96), I.universal_w2("1/2000", "real_symmetric", 96)
    assert 1.9 < float(r1 / r2) < 2.1
    h1, h2 = I.universal_w2("1/1000", "hermitian", 96), I.universal_w2("1/2000", "hermitian", 96)
    assert 3.9 < float(h1 / h2) < 4.1


def test_sinc_half_line_constant():
    assert I.verify_sinc_half_line(96) < 1e-25


def test_fig8_table_shape():
    lines = I.fig8_table(1, "1/4", 53).splitlines()
    assert lines[0] == "r,W2_herm,W2_real,W2_quat"
    assert len(lines) == 6


def test_report_round_trip():
    rep = I.report("demo", {"a": mpq(1, 3)}, {"r": context(64).mpf(2) ** -60}, True)
    doc = json.loads(I.dumps(rep))
    assert doc["params"]["a"] == "1/3" and doc["verdict"] == "pass"
