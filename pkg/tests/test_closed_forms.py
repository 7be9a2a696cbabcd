from math import factorial, pi

import mpmath
import pytest
from gmpy2 import mpq
from scipy.special import sici

from spectralab.closed_forms import (SINE_G5, ConstantExpr, Disputed, OracleRangeError,
                                     chekhov_f1, fg_oracle, gaussian_lnz_reconstruction,
                                     hard_edge_data, partition_oracle, positive_prob,
                                     positive_prob_series, stirling_barnes)
from spectralab.integrable.fredholm import sinc_tail
from spectralab.numeric import bernoulli
from spectralab.numeric.bigfloat import context


def test_positive_prob_coefficients():
    ser = positive_prob_series(3)
    assert ser.coefficient(-2) == ConstantExpr.rational(mpq(-53, 5760))
    assert ser.coefficient(-4) == ConstantExpr.rational(mpq(6007, 1161216))
    # the same numbers from the Bernoulli and free-energy pieces directly
    f2, f3 = fg_oracle("gaussian_plus", 2, {"T": 1}), fg_oracle("gaussian_plus", 3, {"T": 1})
    assert bernoulli(4) / 8 - f2 == mpq(-53, 5760)
    assert bernoulli(6) / 24 - f3 == mpq(6007, 1161216)


def test_positive_prob_independent_of_T():
    for T in (mpq(1, 3), 3, 12):
        a, b = positive_prob_series(3, T), positive_prob_series(3)
        for k in (2, 0, -2, -4):
            assert (a.coefficient(k).expand_symbols() - b.coefficient(k).expand_symbols()
                    ).evaluate(128) == 0


def test_positive_prob_small_N_against_integral():
    # N = 2 Gaussian: P(x1, x2 > 0) with weight (x1 - x2)^2 exp(-(x1^2 + x2^2))
    mp = mpmath.mp.clone()
    mp.prec = 80
    f = lambda x, y: (x - y) ** 2 * mp.exp(-(x * x + y * y))  # noqa: E731
    p = mp.quad(f, [0, mp.inf], [0, mp.inf]) / mp.quad(f, [-mp.inf, mp.inf], [-mp.inf, mp.inf])
    _, v = positive_prob(2)
    assert abs(float(v) - float(mp.log(p))) < 0.05


def test_chekhov_reproduces_gaussian_plus():
    want = fg_oracle("gaussian_plus", 1, {"T": 3})
    assert chekhov_f1(*hard_edge_data("gaussian_plus", 3)) == want


def test_f1_temperature_shift():
    a = fg_oracle("exponential", 1, {"T": 1}).expand_symbols()
    b = fg_oracle("exponential", 1, {"T": 4}).expand_symbols()
    assert b - a == ConstantExpr.log(4, mpq(-1, 6))
    assert chekhov_f1(*hard_edge_data("exponential", 1)) == chekhov_f1(*hard_edge_data("exponential", 4))


def test_chekhov_rejects_critical():
    with pytest.raises(ValueError):
        chekhov_f1([0, 1], 0, 4, 1)


def test_sine_g5_disputed():
    d = fg_oracle("sine", 5, {"s": 2})
    assert isinstance(d, Disputed)
    assert d.candidates() == sorted(v / 2 ** 8 for v in SINE_G5.values())
    assert SINE_G5["local_expansion"] == mpq(-6575, 16)


def test_oracle_range():
    with pytest.raises(OracleRangeError):
        fg_oracle("gaussian_plus", 4)
    with pytest.raises(KeyError):
        fg_oracle("nope", 2)


def _mp(prec):
    mp = mpmath.mp.clone()
    mp.prec = prec
    return mp


def test_partition_gaussian_against_integral():
    mp = _mp(80)
    f = lambda x, y: (x - y) ** 2 * mp.exp(-(x * x + y * y))  # noqa: E731
    want = mp.log(mp.quad(f, [-mp.inf, mp.inf], [-mp.inf, mp.inf]))
    assert abs(partition_oracle("gaussian", 2, p=80).value - want) < 1e-15
    assert abs(partition_oracle("gaussian", 1, T=3, p=80).value - mp.log(mp.sqrt(6 * mp.pi))) < 1e-18


def test_partition_exponential_and_selberg_against_integral():
    mp = _mp(80)
    f = lambda x, y: (x - y) ** 2 * mp.exp(-2 * (x + y))  # noqa: E731
    assert abs(partition_oracle("exponential", 2, p=80).value
               - mp.log(mp.quad(f, [0, mp.inf], [0, mp.inf]))) < 1e-15
    g = lambda x, y: (x - y) ** 2  # noqa: E731
    assert abs(partition_oracle("selberg111", 2, p=80).value - mp.log(mp.quad(g, [-1, 1], [-1, 1]))) < 1e-15
    assert partition_oracle("selberg111", 2).exact_factor == mpq(8, 3)


def test_partition_exact_factors():
    assert partition_oracle("gaussian", 4).exact_factor == factorial(4) * 1 * 2 * 6
    assert partition_oracle("toeplitz_full_circle", 9).value == 0


@pytest.mark.parametrize("m", [1, 2, 3])
def test_stirling_barnes_residual_decays(m):
    r10, r20 = stirling_barnes(10, m), stirling_barnes(20, m)
    assert r10.exact_integer == 1 * 2 * 6 * 24 * 120 * 720 * 5040 * 40320 * 362880
    assert abs(r20.residual) < abs(r10.residual) / 2 ** (2 * m)


def test_gaussian_lnz_reconstruction_is_exact():
    ctx = context(200)
    for N in (3, 7):
        assert abs(gaussian_lnz_reconstruction(N, p=200)
                   - partition_oracle("gaussian", N, p=200).value) < ctx.mpf(2) ** -180


@pytest.mark.parametrize("R", [40, 100, 400])
def test_sinc_tail_against_scipy(R):
    si, _ = sici(pi * R)
    want = (pi / 2 - si) / pi
    assert abs(float(sinc_tail(context(64).mpf(R), context(64))) - float(want)) < 1e-14
