"""Mobius maps of the projective line and their action on singular points.

Entries are either exact (``RatExpr``, ``Fraction``, ``int``) or complex
doubles.  Points of the extended line are ordinary values or :data:`INF`.
"""
from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction
from typing import List, Sequence, Tuple

from .exactalg import RatExpr, Registry, coerce


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


class CoincidentPoints(ValueError):
    pass


class DegenerateMap(ValueError):
    pass


class DegenerateA(ValueError):
    pass


class DegeneratePoints(ValueError):
    pass


def _is_zero(v) -> bool:
    if isinstance(v, RatExpr):
        return v.is_zero()
    return v == 0


def _same(u, v) -> bool:
    if u is INF or v is INF:
        return u is v
    return _is_zero(u - v)


class MobiusMap:
    """x -> (A x + B) / (C x + D)."""

    __slots__ = ("A", "B", "C", "D")

    def __init__(self, A, B, C, D):
        if _is_zero(A * D - B * C):
            raise DegenerateMap(f"singular matrix ({A}, {B}; {C}, {D})")
        self.A, self.B, self.C, self.D = A, B, C, D

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1, 0, 0, 1)

    @property
    def entries(self):
        return (self.A, self.B, self.C, self.D)

    @property
    def is_symbolic(self) -> bool:
        return not any(isinstance(v, complex) or isinstance(v, float) for v in self.entries)

    def __call__(self, p):
        return apply(self, p)

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """self after other."""
        A, B, C, D = self.entries
        a, b, c, d = other.entries
        return MobiusMap(A * a + B * c, A * b + B * d, C * a + D * c, C * b + D * d)

    __matmul__ = compose

    def inverse(self) -> "MobiusMap":
        A, B, C, D = self.entries
        return MobiusMap(D, -B, -C, A)

    def determinant(self):
        return self.A * self.D - self.B * self.C

    def __eq__(self, other):
        if not isinstance(other, MobiusMap):
            return NotImplemented
        e1, e2 = self.entries, other.entries
        if self.is_symbolic and other.is_symbolic:
            return all(_is_zero(e1[i] * e2[j] - e1[j] * e2[i]) for i in range(4) for j in range(i + 1, 4))
        return projectively_close(self, other)

    def __hash__(self):
        raise TypeError("MobiusMap is unhashable; use to_expr for dictionary keys")

    def to_expr(self, registry: Registry, var: str = "x") -> RatExpr:
        x = RatExpr.symbol(registry, var)
        A, B, C, D = (coerce(registry, v) for v in self.entries)
        return (A * x + B) / (C * x + D)

    def evaluate(self, point) -> "MobiusMap":
        """Numeric copy with symbolic entries evaluated at ``point``."""
        vals = []
        for v in self.entries:
            if isinstance(v, RatExpr):
                vals.append(v.eval(point))
            else:
                vals.append(complex(v))
        return MobiusMap(*vals)

    def __repr__(self):
        return f"MobiusMap({self.A!s}, {self.B!s}, {self.C!s}, {self.D!s})"


def projectively_close(m1: MobiusMap, m2: MobiusMap, tol: float = 1e-10) -> bool:
    e1 = [complex(v) if not isinstance(v, RatExpr) else complex(v.constant_value()) for v in m1.entries]
    e2 = [complex(v) if not isinstance(v, RatExpr) else complex(v.constant_value()) for v in m2.entries]
    scale = max(abs(v) for v in e1) * max(abs(v) for v in e2)
    return all(abs(e1[i] * e2[j] - e1[j] * e2[i]) <= tol * scale for i in range(4) for j in range(i + 1, 4))


def _div(u, v):
    if isinstance(u, (int, Fraction)) and isinstance(v, (int, Fraction)):
        q = Fraction(u) / v
        return q.numerator if q.denominator == 1 else q
    return u / v


def apply(m: MobiusMap, p):
    """Image of a point of the extended line; m(inf) = A/C and m(-D/C) = inf."""
    A, B, C, D = m.entries
    if p is INF:
        if _is_zero(C):
            return INF
        return _div(A, C)
    den = C * p + D
    if _is_zero(den):
        return INF
    return _div(A * p + B, den)


def mobius_through(p1, p2, p3) -> MobiusMap:
    """The unique map sending (p1, p2, p3) to (0, 1, inf)."""
    if _same(p1, p2) or _same(p1, p3) or _same(p2, p3):
        raise CoincidentPoints(f"points must be distinct: {p1}, {p2}, {p3}")
    if p1 is INF:
        return MobiusMap(0, p2 - p3, 1, -p3)
    if p2 is INF:
        return MobiusMap(1, -p1, 1, -p3)
    if p3 is INF:
        return MobiusMap(1, -p1, 0, p2 - p1)
    return MobiusMap(p2 - p3, -p1 * (p2 - p3), p2 - p1, -p3 * (p2 - p1))


def kummer_maps() -> List[MobiusMap]:
    """x, x/(x-1), 1-x, (x-1)/x, 1/x, 1/(1-x)."""
    return [
        MobiusMap(1, 0, 0, 1),
        MobiusMap(1, 0, 1, -1),
        MobiusMap(-1, 1, 0, 1),
        MobiusMap(1, -1, 1, 0),
        MobiusMap(0, 1, 1, 0),
        MobiusMap(0, 1, -1, 1),
    ]


def _check_a(a):
    if a is INF or _is_zero(a) or _is_zero(a - 1):
        raise DegenerateA(f"a must avoid 0, 1, inf (got {a})")
    if isinstance(a, complex) and not cmath.isfinite(a):
        raise DegenerateA(f"a must be finite (got {a})")


def heun_maps(a) -> List[MobiusMap]:
    """The 24 maps underlying the Heun group, four rows of six.

    Row k sends the k-th of (0, 1, inf, a) to 0.
    """
    _check_a(a)
    return [
        # 0 -> 0
        MobiusMap(1, 0, 0, 1),
        MobiusMap(1, 0, 1, -1),
        MobiusMap(1, 0, 0, a),
        MobiusMap(1, 0, 1, -a),
        MobiusMap(1 - a, 0, 1, -a),
        MobiusMap(a - 1, 0, a, -a),
        # 1 -> 0
        MobiusMap(-1, 1, 0, 1),
        MobiusMap(1, -1, 1, 0),
        MobiusMap(1, -1, 1, -a),
        MobiusMap(1, -1, 0, a - 1),
        MobiusMap(a, -a, 1, -a),
        MobiusMap(a, -a, a - 1, 0),
        # inf -> 0
        MobiusMap(0, 1, 1, 0),
        MobiusMap(0, 1, -1, 1),
        MobiusMap(0, a, 1, 0),
        MobiusMap(0, a, -1, a),
        MobiusMap(0, a - 1, 1, -1),
        MobiusMap(0, 1 - a, 1, -a),
        # a -> 0
        MobiusMap(1, -a, 1, 0),
        MobiusMap(-1, a, 0, a),
        MobiusMap(1, -a, 1, -1),
        MobiusMap(-1, a, 0, a - 1),
        MobiusMap(1, -a, a, -a),
        MobiusMap(-1, a, a - 1, 0),
    ]


def stabilizer_n4(a) -> List[MobiusMap]:
    """The Klein four-group x, a/x, (x-a)/(x-1), a(x-1)/(x-a)."""
    _check_a(a)
    return [
        MobiusMap(1, 0, 0, 1),
        MobiusMap(0, a, 1, 0),
        MobiusMap(1, -a, 1, -1),
        MobiusMap(a, -a, 1, -a),
    ]


# -- numeric orbits ----------------------------------------------------------


def chordal(z, w) -> float:
    """Chordal distance on the Riemann sphere (diameter-2 normalization)."""
    if z is INF and w is INF:
        return 0.0
    if z is INF:
        z, w = w, z
    if w is INF:
        return 2.0 / math.sqrt(1.0 + abs(z) ** 2)
    return 2.0 * abs(z - w) / math.sqrt((1.0 + abs(z) ** 2) * (1.0 + abs(w) ** 2))


def dedup(values: Sequence, tol: float = 1e-9, metric=None) -> list:
    """Tolerance union-find; returns one representative per cluster, in
    first-seen order."""
    metric = metric or chordal
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if metric(values[i], values[j]) <= tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    return [values[i] for i in range(n) if find(i) == i]


def _pair_metric(u, v) -> float:
    return max(chordal(u[0], v[0]), chordal(u[1], v[1]))


def orbit_n4(a: complex, tol: float = 1e-9) -> List[complex]:
    a = complex(a)
    _check_a(a)
    if abs(a) < tol or abs(a - 1) < tol:
        raise DegenerateA(f"a too close to 0 or 1 (got {a})")
    images = [apply(m, a) for m in kummer_maps()]
    return dedup([complex(v) for v in images], tol)


def orbit_n5_images(a: complex, b: complex) -> List[Tuple[complex, complex]]:
    """All 120 images of (a, b): 60 ordered triples sent to (0, 1, inf), each
    followed by both orderings of the two remaining images."""
    pts = [0j, 1 + 0j, INF, complex(a), complex(b)]
    for i, j in itertools.combinations(range(5), 2):
        if chordal(pts[i], pts[j]) == 0.0:
            raise DegeneratePoints(f"configuration (0, 1, inf, {a}, {b}) has coincident points")
    out = []
    for i, j, k in itertools.permutations(range(5), 3):
        m = mobius_through(pts[i], pts[j], pts[k])
        rest = [r for r in range(5) if r not in (i, j, k)]
        u, v = apply(m, pts[rest[0]]), apply(m, pts[rest[1]])
        out.append((u, v))
        out.append((v, u))
    return out


def orbit_n5(a: complex, b: complex, tol: float = 1e-9) -> List[Tuple[complex, complex]]:
    return dedup(orbit_n5_images(a, b), tol, _pair_metric)

