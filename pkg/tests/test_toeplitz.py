import mpmath
import pytest
from gmpy2 import mpq

from spectralab.numeric.bigfloat import context
from spectralab.toeplitz import (COLUMNS, SymbolSpec, fourier_coeffs, format_table, lndet,
                                 quadrature_oracle, residual_table)


@pytest.mark.parametrize("N", [1, 2, 5, 9])
def test_full_circle_is_zero(N):
    for spec in (SymbolSpec(text="pi"), SymbolSpec(text="2*atan(1)*2")):
        assert lndet(spec, N).lndet == 0


@pytest.mark.parametrize("gamma", ["pi/3", "2*pi/5", "5*pi/6"])
def test_fourier_coeffs_against_quadrature(gamma):
    spec = SymbolSpec(text=gamma)
    mp = mpmath.mp.clone()
    mp.prec = 100
    g = spec.gamma(100)
    ts = fourier_coeffs(spec, 4, 100)
    for k, t in enumerate(ts):
        want = mp.quad(lambda th: mp.cos(k * th), [-g, g]) / (2 * mp.pi)
        assert abs(t - want) < mp.mpf(2) ** -90


@pytest.mark.parametrize("gamma", ["pi/3", "pi/2", "3*pi/4"])
@pytest.mark.parametrize("N", [1, 2, 3])
def test_cholesky_against_heine_integral(gamma, N):
    spec = SymbolSpec(text=gamma)
    ctx = context(96)
    d = ctx.exp(lndet(spec, N).lndet)
    assert abs(d - quadrature_oracle(spec, N, 96)) < ctx.mpf(2) ** -40 * max(d, 1)


def test_two_by_two_closed_form():
    spec = SymbolSpec(a=mpq(1, 2))
    t0, t1 = fourier_coeffs(spec, 1, 128)
    ctx = context(128)
    assert abs(lndet(spec, 2, 128).lndet - ctx.log(t0 * t0 - t1 * t1)) < ctx.mpf(2) ** -110


def test_a_and_text_agree():
    a = SymbolSpec(a=mpq(1))            # gamma = pi/2
    t = SymbolSpec(text="pi/2")
    ctx = context(200)
    assert abs(lndet(a, 6, 200).lndet - lndet(t, 6, 200).lndet) < ctx.mpf(2) ** -150


def test_table_header_and_shape():
    rows = residual_table(SymbolSpec(text="pi/2"), 5, 3, 2)
    text = format_table(rows, 20)
    lines = text.splitlines()
    assert lines[0] == ",".join(COLUMNS)
    assert [ln.split(",")[0] for ln in lines[1:]] == ["2", "3", "4", "5"]
    assert all(len(ln.split(",")) == 6 for ln in lines)


def test_residuals_shrink():
    rows = residual_table(SymbolSpec(text="pi/2"), 24, 3, 24)
    _, _, r0, r1, r2, r3 = rows[0]
    assert abs(r3) < abs(r2) < abs(r1) < abs(r0)


def test_bad_inputs():
    with pytest.raises(ValueError):
        SymbolSpec(text="4").gamma(64)
    with pytest.raises(ValueError):
        lndet(SymbolSpec(text="pi/2"), 0)
    with pytest.raises(ValueError):
        quadrature_oracle(SymbolSpec(text="pi/2"), 4)
    with pytest.raises(ValueError):
        residual_table(SymbolSpec(text="pi/2"), 65)
