import math

import pytest
from gmpy2 import mpq

from spectralab.curves import (CATALOG, CurveError, NeedsAlgebraicExtension, PotentialSpec,
                               catalog, dumps, loads, one_cut_solve, read, validate, write)
from spectralab.curves.curve import SpectralCurve
from spectralab.numeric import Poly
from spectralab.numeric.bigfloat import context


@pytest.mark.parametrize("name", CATALOG)
def test_catalog_curves_validate(name):
    rep = validate(catalog(name))
    assert rep.ok, rep.failures


@pytest.mark.parametrize("name", CATALOG)
def test_curve_file_round_trip(name, tmp_path):
    c = catalog(name)
    text = dumps(c)
    assert loads(text) == c
    assert dumps(loads(text)) == text
    path = tmp_path / (name + ".json")
    write(c, str(path))
    assert read(str(path)) == c


def test_broken_involution_reports_witness():
    c = catalog("gaussian")
    bad = SpectralCurve(c.name, c.params, c.x, c.y, (0, 1, 2, 0), c.ram, c.ring, c.plane)
    rep = validate(bad)
    assert not rep.ok
    names = {f["check"] if isinstance(f, dict) else f[0] for f in rep.failures}
    assert "x_sigma_invariant" in names
    doc = rep.as_dict()
    detail = [r["detail"] for r in doc["checks"] if r["check"] == "x_sigma_invariant"][0]
    assert detail


def test_malformed_file_rejected():
    with pytest.raises(CurveError):
        loads('{"name": "x"}')
    text = dumps(catalog("gaussian")).replace('"b": "1"', '"b": "2"')
    with pytest.raises(CurveError):
        loads(text)


def test_unknown_curve_and_param():
    with pytest.raises(KeyError):
        catalog("nope")
    with pytest.raises(KeyError):
        catalog("gaussian", {"s": 1})


def test_irrational_parameter_needs_extension():
    with pytest.raises(NeedsAlgebraicExtension):
        catalog("gaussian", {"T": 2})


def test_one_cut_gaussian_semicircle():
    a, b, M = one_cut_solve(PotentialSpec(Poly([0, 0, mpq(1, 2)]), mpq(1)), 96)
    ctx = context(96)
    assert abs(a + 2) < ctx.mpf(2) ** -60 and abs(b - 2) < ctx.mpf(2) ** -60
    assert M.degree == 0 and abs(M.c[0] - 1) < ctx.mpf(2) ** -60


@pytest.mark.parametrize("g", [mpq(1, 10), mpq(1, 3), mpq(2)])
def test_one_cut_quartic_against_closed_edge(g):
    # V = x^2/2 + g x^4: edge 2a with 12 g a^4 + a^2 - 1 = 0
    a, b, _ = one_cut_solve(PotentialSpec(Poly([0, 0, mpq(1, 2), 0, g]), mpq(1)), 64)
    gf = float(g)
    a2 = (-1 + math.sqrt(1 + 48 * gf)) / (24 * gf)
    assert abs(float(b) - 2 * math.sqrt(a2)) < 1e-12
    assert abs(float(a) + float(b)) < 1e-12


def test_temperature_must_be_positive():
    with pytest.raises(ValueError):
        PotentialSpec(Poly([0, 0, 1]), 0)
