"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a mapping from exponent vectors (one entry per registry
symbol) to nonzero coefficients.  Coefficients are ``int`` when integral and
``fractions.Fraction`` otherwise, so the common integer case stays on the fast
path.  The dict-level helpers prefixed with ``_`` are shared with
:mod:`heun192.exactalg.ratexpr`, which calls them directly to avoid wrapping
intermediate results.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from operator import add, sub
from typing import Dict, Iterable, List, Mapping, Tuple

Exps = Tuple[int, ...]
Terms = Dict[Exps, object]


@dataclass(frozen=True)
class Registry:
    """Ordered, fixed set of symbol names shared by a family of expressions."""

    names: Tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate symbol names in {self.names}")

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownSymbol(name) from None

    def __contains__(self, name):
        return name in self.names

    @property
    def zero_exps(self) -> Exps:
        return (0,) * len(self.names)


class UnknownSymbol(KeyError):
    """A symbol name outside the registry was used."""


def _normc(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _grlex_key(m: Exps):
    return (sum(m), m)


def _leading(f: Terms) -> Exps:
    """Leading exponent under graded lexicographic order."""
    return max(f, key=_grlex_key)


def _add(f: Terms, g: Terms) -> Terms:
    if len(f) < len(g):
        f, g = g, f
    r = dict(f)
    for m, c in g.items():
        v = r.get(m)
        if v is None:
            r[m] = c
        else:
            v = v + c
            if v:
                r[m] = _normc(v)
            else:
                del r[m]
    return r


def _neg(f: Terms) -> Terms:
    return {m: -c for m, c in f.items()}


def _sub(f: Terms, g: Terms) -> Terms:
    r = dict(f)
    for m, c in g.items():
        v = r.get(m)
        if v is None:
            r[m] = -c
        else:
            v = v - c
            if v:
                r[m] = _normc(v)
            else:
                del r[m]
    return r


def _scale(f: Terms, c) -> Terms:
    if not c:
        return {}
    if c == 1:
        return f
    return {m: _normc(v * c) for m, v in f.items()}


def _mul(f: Terms, g: Terms) -> Terms:
    if len(f) < len(g):
        f, g = g, f
    r: Terms = {}
    get = r.get
    for m2, c2 in g.items():
        for m1, c1 in f.items():
            m = tuple(map(add, m1, m2))
            v = get(m)
            if v is None:
                r[m] = c1 * c2
            else:
                r[m] = v + c1 * c2
    return {m: _normc(c) for m, c in r.items() if c}


def _mul_mono(f: Terms, m0: Exps, c0=1) -> Terms:
    return {tuple(map(add, m, m0)): _normc(c * c0) for m, c in f.items()}


def _pow(f: Terms, k: int, nvars: int) -> Terms:
    r: Terms = {(0,) * nvars: 1}
    base = f
    while k:
        if k & 1:
            r = _mul(r, base)
        k >>= 1
        if k:
            base = _mul(base, base)
    return r


def _divides(m: Exps, n: Exps) -> bool:
    return all(a <= b for a, b in zip(m, n))


def _divexact(f: Terms, g: Terms):
    """Return q with f == q*g, or None if g does not divide f."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    lg = max(g)
    cg = g[lg]
    q: Terms = {}
    r = dict(f)
    while r:
        lr = max(r)
        if not _divides(lg, lr):
            return None
        c = r[lr]
        if type(c) is int and type(cg) is int:
            qc, rem = divmod(c, cg)
            if rem:
                qc = Fraction(c, cg)
        else:
            qc = _normc(Fraction(c) / cg)
        m = tuple(map(sub, lr, lg))
        q[m] = qc
        for mg, vg in g.items():
            mm = tuple(map(add, mg, m))
            v = r.get(mm, 0) - qc * vg
            if v:
                r[mm] = _normc(v)
            else:
                r.pop(mm, None)
    return q


def _is_const(f: Terms) -> bool:
    return not f or (len(f) == 1 and not any(next(iter(f))))


def _int_content(f: Terms) -> int:
    return reduce(gcd, f.values())


def _denominator_lcm(f: Terms) -> int:
    return reduce(lcm, (c.denominator for c in f.values() if type(c) is Fraction), 1)


def _vars(f: Terms) -> set:
    s = set()
    for m in f:
        for i, e in enumerate(m):
            if e:
                s.add(i)
    return s


def _coeffs_in(f: Terms, v: int) -> Dict[int, Terms]:
    out: Dict[int, Terms] = {}
    for m, c in f.items():
        d = m[v]
        if d:
            m = m[:v] + (0,) + m[v + 1:]
        out.setdefault(d, {})[m] = c
    return out


def _from_coeffs(cs: Mapping[int, Terms], v: int) -> Terms:
    r: Terms = {}
    for d, cf in cs.items():
        for m, c in cf.items():
            r[m[:v] + (d,) + m[v + 1:]] = c
    return r


def _degree_in(f: Terms, v: int) -> int:
    return max((m[v] for m in f), default=-1)


# -- gcd over Z[x_1..x_n] -------------------------------------------------
#
# Recursive content / primitive-part Euclid.  All helpers below take and
# return integer-coefficient term dicts.


def _gcd(f: Terms, g: Terms) -> Terms:
    """Integer gcd, normalized to positive graded-lex leading coefficient."""
    if not f:
        return _sign_normalize(g)
    if not g:
        return _sign_normalize(f)
    cf, cg = abs(_int_content(f)), abs(_int_content(g))
    c = gcd(cf, cg)
    if cf != 1:
        f = {m: v // cf for m, v in f.items()}
    if cg != 1:
        g = {m: v // cg for m, v in g.items()}
    h = _gcd_prim(f, g)
    return _scale(h, c) if c != 1 else h


def _sign_normalize(f: Terms) -> Terms:
    if f and f[_leading(f)] < 0:
        return _neg(f)
    return f


def _primitive(f: Terms) -> Terms:
    c = _int_content(f)
    if f[_leading(f)] < 0:
        c = -abs(c)
    else:
        c = abs(c)
    if c == 1:
        return f
    return {m: v // c for m, v in f.items()}


def _mono_gcd(f: Terms, m0: Exps) -> Exps:
    out = list(m0)
    for m in f:
        for i, e in enumerate(m):
            if e < out[i]:
                out[i] = e
    return tuple(out)


_PRIME = 2305843009213693951  # 2^61 - 1
_rng = random.Random(20240917)


def _image_mod_p(f: Terms, v: int, point) -> List[int]:
    """Univariate image in variable v (coefficients low to high) mod p."""
    out: Dict[int, int] = {}
    for m, c in f.items():
        t = c % _PRIME
        for i, e in enumerate(m):
            if i != v and e:
                t = t * pow(point[i], e, _PRIME) % _PRIME
        out[m[v]] = (out.get(m[v], 0) + t) % _PRIME
    d = max(out)
    return [out.get(k, 0) for k in range(d + 1)]


def _unigcd_degree_mod_p(a: List[int], b: List[int]) -> int:
    def trim(u):
        while u and u[-1] == 0:
            u.pop()
        return u

    a, b = trim(list(a)), trim(list(b))
    while b:
        inv = pow(b[-1], _PRIME - 2, _PRIME)
        while len(a) >= len(b):
            c = a[-1] * inv % _PRIME
            s = len(a) - len(b)
            for k in range(len(b)):
                a[s + k] = (a[s + k] - c * b[k]) % _PRIME
            trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1


def _certainly_coprime(f: Terms, g: Terms, common) -> bool:
    """True proves gcd(f, g) is constant; False is inconclusive.

    If the leading coefficients in v survive the evaluation, the image of the
    gcd keeps its degree in v and divides both images, so a constant modular
    gcd bounds that degree by zero.
    """
    n = len(next(iter(f)))
    for v in common:
        point = [_rng.randrange(2, _PRIME - 1) for _ in range(n)]
        a, b = _image_mod_p(f, v, point), _image_mod_p(g, v, point)
        if a[-1] == 0 or b[-1] == 0 or _unigcd_degree_mod_p(a, b) != 0:
            return False
    return True


# Heuristic gcd: evaluate one variable at a large integer, recurse, then
# rebuild the candidate from its xi-adic digits and confirm by division.


def _max_norm(f: Terms) -> int:
    return max(abs(c) for c in f.values())


def _eval_at(f: Terms, v: int, xi: int) -> Terms:
    out: Terms = {}
    for m, c in f.items():
        k = m[v]
        mm = m[:v] + (0,) + m[v + 1:] if k else m
        out[mm] = out.get(mm, 0) + c * xi**k
    return {m: c for m, c in out.items() if c}


def _interpolate(h: Terms, v: int, xi: int) -> Terms:
    out: Terms = {}
    half = xi // 2
    k = 0
    while h:
        nxt: Terms = {}
        for m, c in h.items():
            r = c % xi
            if r > half:
                r -= xi
            if r:
                out[m[:v] + (k,) + m[v + 1:]] = r
            q = (c - r) // xi
            if q:
                nxt[m] = q
        h = nxt
        k += 1
    return out


def _heu(f: Terms, g: Terms):
    """Full gcd of integer polynomials, or None when the heuristic gives up."""
    cf, cg = _int_content(f), _int_content(g)
    c = gcd(cf, cg)
    f = {m: v // cf for m, v in f.items()} if cf != 1 else f
    g = {m: v // cg for m, v in g.items()} if cg != 1 else g
    vf, vg = _vars(f), _vars(g)
    zero = (0,) * len(next(iter(f)))
    if not vf or not vg:
        return {zero: c}
    only = (vf - vg) or (vg - vf)
    if only:
        # a variable present in one argument only: fold through its coefficients
        big, small = (f, g) if vf - vg else (g, f)
        h = small
        for cfk in sorted(_coeffs_in(big, max(only)).values(), key=len):
            h = _heu(h, cfk)
            if h is None:
                return None
            if _is_const(h):
                return {zero: c}
        h = _sign_normalize(_primitive(h))
        return _scale(h, c) if c != 1 else h
    v = max(vf)
    xi = 2 * min(_max_norm(f), _max_norm(g)) + 29
    for _ in range(6):
        fe, ge = _eval_at(f, v, xi), _eval_at(g, v, xi)
        if fe and ge:
            he = _heu(fe, ge)
            if he is not None:
                h = _interpolate(he, v, xi)
                if h:
                    h = _primitive(h)
                    if _divexact_int(f, h) and _divexact_int(g, h):
                        h = _sign_normalize(h)
                        return _scale(h, c) if c != 1 else h
        xi = xi * 73794 // 27011
    return None


def _divexact_int(f: Terms, g: Terms) -> bool:
    q = _divexact(f, g)
    return q is not None and all(type(c) is int for c in q.values())


def _gcd_prim(f: Terms, g: Terms) -> Terms:
    """gcd of two integer polynomials with unit integer content."""
    n = len(next(iter(f)))
    one = {(0,) * n: 1}
    if _is_const(f) or _is_const(g):
        return one
    if len(g) == 1:
        return {_mono_gcd(f, next(iter(g))): 1}
    if len(f) == 1:
        return {_mono_gcd(g, next(iter(f))): 1}
    if f == g or f == _neg(g):
        return _sign_normalize(f)
    vf, vg = _vars(f), _vars(g)
    if _certainly_coprime(f, g, sorted(vf & vg)):
        return one
    only = (vf - vg) or (vg - vf)
    if only:
        # a variable present in just one argument: fold the gcd through its
        # coefficients, which are free of that variable
        if vf - vg:
            big, small = f, g
        else:
            big, small = g, f
        v = max(only)
        h = small
        for cf in sorted(_coeffs_in(big, v).values(), key=len):
            h = _gcd(h, cf)
            if _is_const(h):
                return one
        return _primitive(h)
    h = _heu(f, g)
    if h is not None:
        return h
    v = max(vf)
    cs_f, cs_g = _coeffs_in(f, v), _coeffs_in(g, v)
    cont_f = _content_of(cs_f.values())
    cont_g = _content_of(cs_g.values())
    c = _gcd(cont_f, cont_g)
    pf = _div_coeffs(cs_f, cont_f, v)
    pg = _div_coeffs(cs_g, cont_g, v)
    if _degree_in(pf, v) < _degree_in(pg, v):
        pf, pg = pg, pf
    while True:
        r = _prem(pf, pg, v)
        if not r:
            h = pg
            break
        if _degree_in(r, v) == 0:
            h = one
            break
        r = _pp_in(r, v)
        pf, pg = pg, r
    h = _primitive(h)
    if not _is_const(c):
        h = _mul(h, c)
    return _sign_normalize(h)


def _content_of(coeffs: Iterable[Terms]) -> Terms:
    cs = sorted(coeffs, key=len)
    h = cs[0]
    for cf in cs[1:]:
        if _is_const(h):
            break
        h = _gcd(h, cf)
    if _is_const(h):
        n = len(next(iter(h)))
        return {(0,) * n: 1}
    return _primitive(h)


def _div_coeffs(cs: Mapping[int, Terms], d: Terms, v: int) -> Terms:
    if _is_const(d) and next(iter(d.values())) == 1:
        return _from_coeffs(cs, v)
    out = {}
    for k, cf in cs.items():
        q = _divexact(cf, d)
        if q is None:
            raise ArithmeticError("content does not divide coefficient")
        out[k] = q
    return _from_coeffs(out, v)


def _pp_in(f: Terms, v: int) -> Terms:
    cs = _coeffs_in(f, v)
    cont = _content_of(cs.values())
    return _primitive(_div_coeffs(cs, cont, v))


def _prem(f: Terms, g: Terms, v: int) -> Terms:
    """Sparse pseudo-remainder of f by g with respect to variable v."""
    cs_g = _coeffs_in(g, v)
    dg = max(cs_g)
    lc_g = cs_g[dg]
    r = f
    while r:
        dr = _degree_in(r, v)
        if dr < dg:
            break
        lc_r = _coeffs_in(r, v)[dr]
        shift = tuple(dr - dg if i == v else 0 for i in range(len(next(iter(g)))))
        r = _sub(_mul(r, lc_g), _mul(_mul_mono(g, shift), lc_r))
    return r


def _to_integer(f: Terms) -> Tuple[Terms, int]:
    """Scale f to integer coefficients; return (scaled, multiplier)."""
    L = _denominator_lcm(f)
    if L == 1:
        return f, 1
    return {m: int(c * L) for m, c in f.items()}, L


class MultiPoly:
    """Immutable sparse polynomial over Q in the symbols of a registry."""

    __slots__ = ("registry", "terms")

    def __init__(self, registry: Registry, terms: Mapping[Exps, object] | None = None):
        self.registry = registry
        t = {}
        for m, c in (terms or {}).items():
            if len(m) != len(registry):
                raise ValueError("exponent vector length does not match registry")
            if c:
                t[tuple(m)] = _normc(Fraction(c) if not isinstance(c, int) else c)
        self.terms = t

    @classmethod
    def _raw(cls, registry, terms):
        p = object.__new__(cls)
        p.registry = registry
        p.terms = terms
        return p

    @classmethod
    def const(cls, registry, c):
        return cls(registry, {registry.zero_exps: c})

    @classmethod
    def symbol(cls, registry, name):
        i = registry.index(name)
        m = tuple(1 if j == i else 0 for j in range(len(registry)))
        return cls._raw(registry, {m: 1})

    def _check(self, other):
        if isinstance(other, MultiPoly):
            if other.registry != self.registry:
                raise ValueError("operands use different symbol registries")
            return other.terms
        return {self.registry.zero_exps: other} if other else {}

    def __add__(self, other):
        return MultiPoly._raw(self.registry, _add(self.terms, self._check(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return MultiPoly._raw(self.registry, _sub(self.terms, self._check(other)))

    def __rsub__(self, other):
        return MultiPoly._raw(self.registry, _sub(self._check(other), self.terms))

    def __neg__(self):
        return MultiPoly._raw(self.registry, _neg(self.terms))

    def __mul__(self, other):
        return MultiPoly._raw(self.registry, _mul(self.terms, self._check(other)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        return MultiPoly._raw(self.registry, _pow(self.terms, k, len(self.registry)))

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.registry == other.registry and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({self.registry.zero_exps: other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        from .parser import format_poly

        return f"MultiPoly({format_poly(self)!r})"

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return _is_const(self.terms)

    def sorted_terms(self):
        """Terms in descending graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_coefficient(self):
        return self.terms[_leading(self.terms)] if self.terms else 0

    def degree(self, name: str | None = None) -> int:
        if not self.terms:
            return -1
        if name is None:
            return max(sum(m) for m in self.terms)
        return _degree_in(self.terms, self.registry.index(name))

    def coefficients_in(self, name: str) -> Dict[int, "MultiPoly"]:
        v = self.registry.index(name)
        return {d: MultiPoly._raw(self.registry, t) for d, t in _coeffs_in(self.terms, v).items()}

    def divexact(self, other: "MultiPoly") -> "MultiPoly":
        q = _divexact(self.terms, self._check(other))
        if q is None:
            raise ArithmeticError("polynomial does not divide exactly")
        return MultiPoly._raw(self.registry, q)

    def evaluate(self, point: Mapping[str, complex]) -> complex:
        vals = [point.get(n, 0) for n in self.registry.names]
        total = 0j
        for m, c in self.terms.items():
            t = complex(c)
            for v, e in zip(vals, m):
                if e:
                    t *= v**e
            total += t
        return total


def poly_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalized to a primitive integer polynomial
    with positive leading coefficient (graded lex).  ``gcd(0, 0) == 0``."""
    if p.registry != q.registry:
        raise ValueError("operands use different symbol registries")
    if not p.terms and not q.terms:
        return MultiPoly._raw(p.registry, {})
    fi, _ = _to_integer(p.terms)
    gi, _ = _to_integer(q.terms)
    if not fi:
        return MultiPoly._raw(p.registry, _primitive(gi))
    if not gi:
        return MultiPoly._raw(p.registry, _primitive(fi))
    cf, cg = abs(_int_content(fi)), abs(_int_content(gi))
    fi = {m: v // cf for m, v in fi.items()}
    gi = {m: v // cg for m, v in gi.items()}
    return MultiPoly._raw(p.registry, _primitive(_gcd_prim(fi, gi)))
