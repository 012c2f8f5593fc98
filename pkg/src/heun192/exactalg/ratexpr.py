"""Canonical rational expressions in a fixed symbol registry.

Canonical form of ``num/den``:

* ``gcd(num, den)`` is a unit (content and polynomial gcd removed);
* ``den`` has integer coefficients with unit content and a positive leading
  coefficient under graded lexicographic order;
* zero is ``0/1``.

Under these rules equal values have identical term mappings, so structural
equality is value equality.
"""
from __future__ import annotations

import cmath
import sys
from fractions import Fraction
from typing import Mapping

from .poly import (
    MultiPoly,
    Registry,
    Terms,
    _add,
    _coeffs_in,
    _degree_in,
    _divexact,
    _gcd_prim,
    _int_content,
    _is_const,
    _leading,
    _mul,
    _neg,
    _normc,
    _pow,
    _scale,
    _sub,
    _to_integer,
)


class DivisionByZero(ZeroDivisionError):
    """Division by an expression that is identically zero."""


class PoleAtPoint(ArithmeticError):
    """Numeric evaluation hit a vanishing denominator."""


def _pgcd(f: Terms, g: Terms) -> Terms:
    """Primitive gcd of two rational-coefficient polynomials."""
    fi, _ = _to_integer(f)
    gi, _ = _to_integer(g)
    cf, cg = abs(_int_content(fi)), abs(_int_content(gi))
    if cf != 1:
        fi = {m: v // cf for m, v in fi.items()}
    if cg != 1:
        gi = {m: v // cg for m, v in gi.items()}
    return _gcd_prim(fi, gi)


def _quo(f: Terms, g: Terms) -> Terms:
    if _is_const(g):
        c = next(iter(g.values()))
        return f if c == 1 else _scale(f, Fraction(1) / c)
    q = _divexact(f, g)
    if q is None:
        raise ArithmeticError("inexact division by a gcd")
    return q


def _canon(registry: Registry, num: Terms, den: Terms, coprime: bool = False):
    if not den:
        raise DivisionByZero("denominator is identically zero")
    one = {registry.zero_exps: 1}
    if not num:
        return {}, one
    if _is_const(den):
        c = next(iter(den.values()))
        return _scale(num, Fraction(1) / c if c != 1 else 1), one
    ni, ln = _to_integer(num)
    di, ld = _to_integer(den)
    scale = Fraction(ld, ln)
    cn, cd = abs(_int_content(ni)), abs(_int_content(di))
    if cn != 1:
        ni = {m: v // cn for m, v in ni.items()}
    if cd != 1:
        di = {m: v // cd for m, v in di.items()}
    scale *= Fraction(cn, cd)
    g = _gcd_prim(ni, di) if not coprime else one
    if not _is_const(g):
        ni = _divexact(ni, g)
        di = _divexact(di, g)
    lc = di[_leading(di)]
    if lc < 0:
        di = _neg(di)
        scale = -scale
    if _is_const(di):
        scale /= next(iter(di.values()))
        di = one
    return _scale(ni, _normc(scale)), di


class RatExpr:
    """Immutable canonical quotient of two :class:`MultiPoly`."""

    __slots__ = ("registry", "_num", "_den", "_hash")

    def __init__(self, num, den=1, registry: Registry | None = None):
        if isinstance(num, MultiPoly):
            registry = num.registry
        elif isinstance(den, MultiPoly):
            registry = den.registry
        if registry is None:
            raise ValueError("registry required for constant expressions")
        n = _as_terms(num, registry)
        d = _as_terms(den, registry)
        self.registry = registry
        self._num, self._den = _canon(registry, n, d)
        self._hash = None

    @classmethod
    def _make(cls, registry, num, den, canonical=False, coprime=False):
        e = object.__new__(cls)
        e.registry = registry
        if canonical:
            e._num, e._den = num, den
        else:
            e._num, e._den = _canon(registry, num, den, coprime)
        e._hash = None
        return e

    @classmethod
    def const(cls, registry: Registry, c) -> "RatExpr":
        c = _normc(Fraction(c)) if not isinstance(c, int) else c
        return cls._make(registry, {registry.zero_exps: c} if c else {}, {registry.zero_exps: 1}, True)

    @classmethod
    def symbol(cls, registry: Registry, name: str) -> "RatExpr":
        return cls._make(registry, MultiPoly.symbol(registry, name).terms, {registry.zero_exps: 1}, True)

    @property
    def num(self) -> MultiPoly:
        return MultiPoly._raw(self.registry, self._num)

    @property
    def den(self) -> MultiPoly:
        return MultiPoly._raw(self.registry, self._den)

    def _coerce(self, other):
        if isinstance(other, RatExpr):
            if other.registry != self.registry:
                raise ValueError("operands use different symbol registries")
            return other
        if isinstance(other, (int, Fraction)):
            return RatExpr.const(self.registry, other)
        if isinstance(other, MultiPoly):
            return RatExpr(other)
        return NotImplemented

    # -- field operations ------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o._num:
            return self
        if not self._num:
            return o
        n1, d1, n2, d2 = self._num, self._den, o._num, o._den
        if d1 == d2:
            return RatExpr._make(self.registry, _add(n1, n2), d1)
        if _is_const(d2):
            return RatExpr._make(self.registry, _add(n1, _mul(n2, d1)), d1)
        if _is_const(d1):
            return RatExpr._make(self.registry, _add(_mul(n1, d2), n2), d2)
        # Henrici: only the common part of the denominators can cancel
        g = _pgcd(d1, d2)
        e1, e2 = _quo(d1, g), _quo(d2, g)
        t = _add(_mul(n1, e2), _mul(n2, e1))
        if not t:
            return RatExpr.const(self.registry, 0)
        if _is_const(g):
            return RatExpr._make(self.registry, t, _mul(d1, d2), coprime=True)
        h = _pgcd(t, g)
        return RatExpr._make(self.registry, _quo(t, h), _mul(e1, _quo(d2, h)), coprime=True)

    __radd__ = __add__

    def __neg__(self):
        return RatExpr._make(self.registry, _neg(self._num), self._den, True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self._num or not o._num:
            return RatExpr.const(self.registry, 0)
        if _is_const(o._num) and _is_const(o._den):
            c = next(iter(o._num.values()))
            return RatExpr._make(self.registry, _scale(self._num, c), self._den, True)
        if _is_const(self._num) and _is_const(self._den):
            c = next(iter(self._num.values()))
            return RatExpr._make(self.registry, _scale(o._num, c), o._den, True)
        n1, d1, n2, d2 = self._num, self._den, o._num, o._den
        g1, g2 = _pgcd(n1, d2), _pgcd(n2, d1)
        num = _mul(_quo(n1, g1), _quo(n2, g2))
        den = _mul(_quo(d1, g2), _quo(d2, g1))
        return RatExpr._make(self.registry, num, den, coprime=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatExpr":
        if not self._num:
            raise DivisionByZero("inverse of zero")
        return RatExpr._make(self.registry, self._den, self._num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o._num:
            raise DivisionByZero("division by the zero expression")
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers are supported")
        if k < 0:
            return self.inverse() ** (-k)
        n = len(self.registry)
        return RatExpr._make(self.registry, _pow(self._num, k, n), _pow(self._den, k, n), True)

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatExpr.const(self.registry, other)
        if not isinstance(other, RatExpr):
            return NotImplemented
        return (
            self.registry == other.registry
            and self._num == other._num
            and self._den == other._den
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self._num.items()), frozenset(self._den.items())))
        return self._hash

    def __bool__(self):
        return bool(self._num)

    def __repr__(self):
        return f"RatExpr({format_expr(self)!r})"

    def __str__(self):
        return format_expr(self)

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._num

    def is_constant(self) -> bool:
        return _is_const(self._num) and _is_const(self._den)

    def is_polynomial(self) -> bool:
        return _is_const(self._den)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return Fraction(next(iter(self._num.values()), 0))

    def symbols(self) -> set:
        out = set()
        for t in (self._num, self._den):
            for m in t:
                out.update(self.registry.names[i] for i, e in enumerate(m) if e)
        return out

    def degree(self, name: str) -> int:
        """Degree of the numerator in ``name``; the expression must be polynomial."""
        return _degree_in(self._num, self.registry.index(name))

    def normalize(self) -> "RatExpr":
        return RatExpr._make(self.registry, self._num, self._den)

    def subs(self, bindings: Mapping[str, object]) -> "RatExpr":
        return substitute(self, bindings)

    def eval(self, point: Mapping[str, complex]) -> complex:
        return eval_complex(self, point)

    def coefficients_in(self, name: str) -> dict:
        """Coefficients as a polynomial in ``name``; the denominator must not
        involve ``name``."""
        i = self.registry.index(name)
        if _degree_in(self._den, i) > 0:
            raise ValueError(f"{self} is not polynomial in {name}")
        den = RatExpr._make(self.registry, self._den, {self.registry.zero_exps: 1}, True)
        out = {}
        for k, c in _coeffs_in(self._num, i).items():
            out[k] = RatExpr._make(self.registry, c, {self.registry.zero_exps: 1}, True) / den
        return out

    def diff(self, name: str) -> "RatExpr":
        return differentiate(self, name)


def _as_terms(value, registry) -> Terms:
    if isinstance(value, MultiPoly):
        if value.registry != registry:
            raise ValueError("operands use different symbol registries")
        return value.terms
    if isinstance(value, (int, Fraction)):
        return {registry.zero_exps: _normc(Fraction(value))} if value else {}
    raise TypeError(f"cannot build a polynomial from {value!r}")


def coerce(registry: Registry, value) -> RatExpr:
    if isinstance(value, RatExpr):
        return value
    if isinstance(value, str):
        from .parser import parse

        return parse(value, registry)
    return RatExpr.const(registry, value)


def _subst_terms(terms: Terms, values, nvars):
    """Substitute into a polynomial; ``values[i]`` is ``None`` (keep) or a
    (num, den) term pair.  Returns (num, den) with den a product of powers."""
    maxdeg = {}
    for m in terms:
        for i, e in enumerate(m):
            if e and values[i] is not None and e > maxdeg.get(i, 0):
                maxdeg[i] = e
    npow = {}
    dpow = {}
    for i, dmax in maxdeg.items():
        n, d = values[i]
        npow[i] = [None] * (dmax + 1)
        dpow[i] = [None] * (dmax + 1)
        np_, dp_ = {(0,) * nvars: 1}, {(0,) * nvars: 1}
        for k in range(dmax + 1):
            npow[i][k] = np_
            dpow[i][k] = dp_
            if k < dmax:
                np_ = _mul(np_, n)
                dp_ = _mul(dp_, d)
    out: Terms = {}
    for m, c in terms.items():
        kept = tuple(0 if values[i] is not None else e for i, e in enumerate(m))
        t = {kept: c}
        for i, dmax in maxdeg.items():
            e = m[i]
            t = _mul(t, _mul(npow[i][e], dpow[i][dmax - e]))
        out = _add(out, t)
    den = {(0,) * nvars: 1}
    for i, dmax in maxdeg.items():
        den = _mul(den, dpow[i][dmax])
    return out, den


def substitute(e: RatExpr, bindings: Mapping[str, object]) -> RatExpr:
    """Simultaneous substitution of symbols by expressions."""
    reg = e.registry
    values = [None] * len(reg)
    for name, val in bindings.items():
        v = coerce(reg, val)
        if v.registry != reg:
            raise ValueError("binding uses a different registry")
        values[reg.index(name)] = (v._num, v._den)
    if all(v is None for v in values):
        return e
    n_num, n_den = _subst_terms(e._num, values, len(reg))
    d_num, d_den = _subst_terms(e._den, values, len(reg))
    if not d_num:
        raise DivisionByZero("denominator vanishes identically after substitution")
    return RatExpr._make(reg, _mul(n_num, d_den), _mul(d_num, n_den))


def _diff_terms(terms: Terms, i: int) -> Terms:
    out = {}
    for m, c in terms.items():
        k = m[i]
        if k:
            out[m[:i] + (k - 1,) + m[i + 1:]] = c * k
    return out


def differentiate(e: RatExpr, name: str) -> RatExpr:
    """Partial derivative with respect to ``name``."""
    i = e.registry.index(name)
    n, d = e._num, e._den
    dn = _diff_terms(n, i)
    if _is_const(d):
        return RatExpr._make(e.registry, dn, d)
    dd = _diff_terms(d, i)
    return RatExpr._make(e.registry, _sub(_mul(dn, d), _mul(n, dd)), _mul(d, d))


def _eval_terms(terms: Terms, vals):
    total = 0j
    mag = 0.0
    for m, c in terms.items():
        t = complex(c)
        for v, k in zip(vals, m):
            if k:
                t *= v**k
        total += t
        mag += abs(t)
    return total, mag


def eval_complex(e: RatExpr, point: Mapping[str, complex]) -> complex:
    """Evaluate in complex double precision."""
    vals = []
    for name in e.registry.names:
        if name in point:
            vals.append(complex(point[name]))
        else:
            vals.append(None)
    needed = e.symbols()
    missing = [n for n in needed if vals[e.registry.index(n)] is None]
    if missing:
        raise KeyError(f"no value for symbols {sorted(missing)}")
    vals = [0j if v is None else v for v in vals]
    num, _ = _eval_terms(e._num, vals)
    den, dmag = _eval_terms(e._den, vals)
    if den == 0 or abs(den) <= 4 * sys.float_info.epsilon * dmag:
        raise PoleAtPoint(f"denominator of {e} vanishes at {dict(point)}")
    r = num / den
    if not cmath.isfinite(r):
        raise PoleAtPoint(f"non-finite value of {e} at {dict(point)}")
    return r


from .parser import format_expr  # noqa: E402  (circular: parser builds RatExpr)
