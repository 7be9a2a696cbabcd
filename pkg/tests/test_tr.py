from fractions import Fraction

import pytest
import sympy as sp
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from spectralab.closed_forms import fg_oracle
from spectralab.curves import catalog
from spectralab.tr import airy_quantum_check, check_properties, dilaton, engine_for

# independent residue computation on x = z + 1/z, y = (z - 1/z)/2, sigma = 1/z
q, z0, z1, z2 = sp.symbols("q z0 z1 z2")
_sq = 1 / q
_y = (q - 1 / q) / 2
_dE = sp.Rational(1, 2) * (1 / (z0 - q) - 1 / (z0 - _sq))
_K = -_dE / ((_y - _y.subs(q, _sq)) * sp.diff(q + 1 / q, q))
_dsq = sp.diff(_sq, q)


def _B(a, b):
    return 1 / (a - b) ** 2


def _res(f):
    f = sp.together(f)
    return sum(sp.residue(f, q, a) for a in (1, -1))


@pytest.fixture(scope="module")
def gauss():
    return engine_for(catalog("gaussian"))


@pytest.fixture(scope="module")
def oracle03():
    return _res(_K * (_B(q, z1) * _B(_sq, z2) + _B(q, z2) * _B(_sq, z1)) * _dsq)


@pytest.fixture(scope="module")
def oracle11():
    return _res(_K * _B(q, _sq) * _dsq)


def _q(v):
    v = sp.Rational(v)
    return mpq(int(v.p), int(v.q))


PTS = [(2, sp.Rational(-3, 5), sp.Rational(7, 3)), (sp.Rational(1, 2), 3, -4),
       (sp.Rational(-5, 2), sp.Rational(11, 7), sp.Rational(2, 9))]


@pytest.mark.parametrize("pts", PTS)
def test_w03_against_residue_oracle(gauss, oracle03, pts):
    want = oracle03.subs({z0: pts[0], z1: pts[1], z2: pts[2]})
    assert gauss.omega(3, 0).evaluate([_q(p) for p in pts]) == _q(sp.nsimplify(want))


@pytest.mark.parametrize("pt", [2, sp.Rational(-3, 7), sp.Rational(5, 2)])
def test_w11_against_residue_oracle(gauss, oracle11, pt):
    want = oracle11.subs(z0, pt)
    assert gauss.omega(1, 1).evaluate([_q(pt)]) == _q(sp.nsimplify(want))


pt = st.fractions(min_value=-9, max_value=9, max_denominator=9).filter(
    lambda f: f not in (1, -1))


@given(st.lists(pt, min_size=4, max_size=4), st.permutations(range(4)))
@settings(max_examples=30, deadline=None)
def test_w04_symmetric(zs, perm):
    eng = engine_for(catalog("gaussian"))
    w = eng.omega(4, 0)
    a = [mpq(z.numerator, z.denominator) for z in zs]
    assert w.evaluate(a) == w.evaluate([a[i] for i in perm])


@given(st.lists(pt, min_size=2, max_size=2))
@settings(max_examples=20, deadline=None)
def test_w21_symmetric(zs):
    w = engine_for(catalog("exponential")).omega(2, 1)
    a = [mpq(Fraction(z)) for z in zs]
    assert w.evaluate(a) == w.evaluate(a[::-1])


FAMILIES = [("gaussian", {"T": 1}), ("gaussian", {"T": 4}), ("exponential", {"T": 1}),
            ("bessel", {"T": 1}), ("gaussian_plus", {"T": 3}), ("sine", {"s": 1})]


@pytest.mark.parametrize("family,params", FAMILIES)
@pytest.mark.parametrize("g", [2, 3])
def test_free_energy_matches_closed_form(family, params, g):
    assert engine_for(catalog(family, params)).free_energy(g) == fg_oracle(family, g, params)


def test_sine_g4():
    assert engine_for(catalog("sine")).free_energy(4) == mpq(131, 12)


def test_orientation_flips_free_energy_sign():
    c = catalog("gaussian")
    assert engine_for(c, -1).free_energy(2) == mpq(1, 240)
    assert engine_for(c, 1).free_energy(2) == mpq(-1, 240)


@pytest.mark.parametrize("name", ["gaussian", "exponential", "sine"])
@pytest.mark.parametrize("n,g", [(2, 1), (4, 0), (1, 2)])
def test_dilaton_prefactor(name, n, g):
    d = dilaton(catalog(name), n, g)
    # measured prefactor 2g - 2 + n (degenerate when w_n^g vanishes)
    assert d["ratio"] == 2 * g - 2 + n or d["verdict"] == "both (degenerate)"


def test_properties_gaussian():
    rows = check_properties(catalog("gaussian"), 3, 2)
    bad = [r for r in rows if not r["pass"]]
    assert not bad, bad


def test_hard_edge_form_holds_on_exponential():
    rows = check_properties(catalog("exponential"), 2, 1)
    hard = [r for r in rows if r["check"] == "loop_equation_hard_edge_form"]
    assert hard and all(r["pass"] for r in hard)


def test_airy_quantum_curve():
    rep = airy_quantum_check(6)
    assert all(not r for r in rep.values())


def test_airy_cap():
    with pytest.raises(ValueError):
        airy_quantum_check(10 ** 6)


def test_omega_rejects_bad_indices(gauss):
    with pytest.raises(ValueError):
        gauss.omega(0, 1)
