"""Exact arithmetic: big rationals, sparse multivariate polynomials, and
canonical rational expressions over a fixed registry of symbols."""
from fractions import Fraction as BigRational

from .parser import ExprSyntaxError, format_expr, format_poly, parse
from .poly import MultiPoly, Registry, UnknownSymbol, poly_gcd
from .ratexpr import DivisionByZero, PoleAtPoint, RatExpr, coerce, differentiate, eval_complex, substitute

#: Symbols of the Heun context, in term-order priority.
HEUN = Registry(("a", "q", "alpha", "beta", "gamma", "delta", "x"))
#: Heun context extended by a second free singular point (five-point work).
HEUN5 = Registry(("a", "q", "alpha", "beta", "gamma", "delta", "x", "b"))
#: Symbols of the Gauss hypergeometric context.
HYPERGEOMETRIC = Registry(("a", "b", "c", "x"))

__all__ = [
    "BigRational",
    "DivisionByZero",
    "ExprSyntaxError",
    "HEUN",
    "HEUN5",
    "HYPERGEOMETRIC",
    "MultiPoly",
    "PoleAtPoint",
    "RatExpr",
    "Registry",
    "UnknownSymbol",
    "coerce",
    "differentiate",
    "eval_complex",
    "format_expr",
    "format_poly",
    "parse",
    "poly_gcd",
    "substitute",
]
