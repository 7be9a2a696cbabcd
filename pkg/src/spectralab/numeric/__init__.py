"""Exact and high-precision arithmetic shared by every other module."""

from .rational import Q, Rational, fmt_rational, parse_rational, rational_sqrt
from .bigfloat import PrecisionError, bf, context, from_hex, to_hex
from .constants import bernoulli, constant
from .poly import Poly, RatFunc, mobius, poly_gcd
from .germ import Germ, InsufficientOrder, LogObstruction, expand
from .linalg import NotPositiveDefinite, lndet_posdef
from .quadrature import gauss_legendre
from .hbar import HbarSeries
from . import expr

__all__ = [
    "Q", "Rational", "fmt_rational", "parse_rational", "rational_sqrt",
    "PrecisionError", "bf", "context", "from_hex", "to_hex",
    "bernoulli", "constant", "Poly", "RatFunc", "mobius", "poly_gcd",
    "Germ", "InsufficientOrder", "LogObstruction", "expand",
    "NotPositiveDefinite", "lndet_posdef", "gauss_legendre", "HbarSeries", "expr",
]
