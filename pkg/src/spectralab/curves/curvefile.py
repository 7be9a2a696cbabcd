"""Curve files: deterministic JSON with every rational written as "p/q"."""

import json

from ..numeric import Poly, RatFunc
from ..numeric.rational import fmt_rational, parse_rational
from .curve import CurveError, SpectralCurve, validate


def _poly_doc(p):
    return [fmt_rational(c) for c in p.c]


def _rf_doc(rf):
    return {"num": _poly_doc(rf.num), "den": _poly_doc(rf.den)}


def _rf_load(doc):
    num = Poly([parse_rational(s) for s in doc["num"]])
    den = Poly([parse_rational(s) for s in doc["den"]])
    return RatFunc(num, den)


def to_document(curve):
    a, b, c, d = curve.sigma
    return {
        "name": curve.name,
        "params": {k: fmt_rational(v) for k, v in curve.params},
        "ring": curve.ring,
        "x": _rf_doc(curve.x),
        "y": _rf_doc(curve.y),
        "sigma": {"a": fmt_rational(a), "b": fmt_rational(b),
                  "c": fmt_rational(c), "d": fmt_rational(d)},
        "ram": [fmt_rational(r) for r in curve.ram],
        "plane": {"coeffs": [[i, j, fmt_rational(v)] for i, j, v in curve.plane]},
    }


def dumps(curve):
    return json.dumps(to_document(curve), indent=2, sort_keys=True) + "\n"


def loads(text, check=True):
    """Parse a curve file; with ``check`` the curve must validate."""
    try:
        doc = json.loads(text)
        sig = doc["sigma"]
        curve = SpectralCurve(
            name=doc["name"],
            params=tuple(sorted((k, parse_rational(v)) for k, v in doc.get("params", {}).items())),
            x=_rf_load(doc["x"]),
            y=_rf_load(doc["y"]),
            sigma=tuple(parse_rational(sig[k]) for k in "abcd"),
            ram=tuple(parse_rational(r) for r in doc["ram"]),
            ring=doc.get("ring", "Rational"),
            plane=tuple((int(i), int(j), parse_rational(v))
                        for i, j, v in doc.get("plane", {}).get("coeffs", [])),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CurveError("malformed curve file: %s" % exc) from exc
    if check:
        rep = validate(curve)
        if not rep.ok:
            raise CurveError("curve failed validation: %s" % rep.failures)
    return curve


def read(path, check=True):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), check)


def write(curve, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(curve))
