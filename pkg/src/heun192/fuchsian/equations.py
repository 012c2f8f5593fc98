"""Asymmetrically reduced Fuchsian equations and the two elementary moves
on them: Mobius pullback and index (gauge) shift.

An equation is u'' + p(x) u' + r(x) u = 0.  In asymmetric form each finite
singular point d carries exponents {0, rho_d}, infinity carries the ordered
pair (rho_inf, rho_inf_hat), and

    p = sum_d (1 - rho_d)/(x - d),
    r = (rho_inf*rho_inf_hat*x^(n-3) - Q_0 - Q_1 x - ... - Q_{n-4} x^(n-4)) / prod_d (x - d).

For Heun this is r = (alpha*beta*x - q)/(x(x-1)(x-a)).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Mapping, Tuple

from ..coxeter import HEUN_POINTS, KUMMER_POINTS, GroundSet
from ..exactalg import HEUN, HYPERGEOMETRIC, RatExpr, Registry, coerce, substitute
from ..projective import DegenerateA, DegenerateMap, MobiusMap


class NotAsymShape(ValueError):
    """A raw equation is not in asymmetric form with the predicted data."""


class NotHeunShape(NotAsymShape):
    pass


def _sym(reg, name):
    return RatExpr.symbol(reg, name)


@dataclass(frozen=True)
class HeunParams:
    a: object
    q: object
    alpha: object
    beta: object
    gamma: object
    delta: object

    @classmethod
    def symbolic(cls, registry: Registry = HEUN) -> "HeunParams":
        return cls(*(_sym(registry, s) for s in ("a", "q", "alpha", "beta", "gamma", "delta")))

    @property
    def epsilon(self):
        return self.alpha + self.beta - self.gamma - self.delta + 1

    def as_dict(self) -> Dict[str, object]:
        return {
            "a": self.a,
            "q": self.q,
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "delta": self.delta,
        }

    def evaluate(self, point: Mapping[str, complex]) -> "HeunParams":
        return HeunParams(*(_ev(v, point) for v in self.as_dict().values()))

    def subs(self, bindings) -> "HeunParams":
        return HeunParams(*(substitute(v, bindings) for v in self.as_dict().values()))


@dataclass(frozen=True)
class HypergeomParams:
    a: object
    b: object
    c: object

    @classmethod
    def symbolic(cls, registry: Registry = HYPERGEOMETRIC) -> "HypergeomParams":
        return cls(*(_sym(registry, s) for s in ("a", "b", "c")))

    def as_dict(self) -> Dict[str, object]:
        return {"a": self.a, "b": self.b, "c": self.c}

    def evaluate(self, point: Mapping[str, complex]) -> "HypergeomParams":
        return HypergeomParams(*(_ev(v, point) for v in self.as_dict().values()))

    def subs(self, bindings) -> "HypergeomParams":
        return HypergeomParams(*(substitute(v, bindings) for v in self.as_dict().values()))


def _ev(v, point):
    if isinstance(v, RatExpr):
        return v.eval(point)
    return complex(v)


@dataclass(frozen=True)
class RawEquation:
    registry: Registry
    p: RatExpr
    r: RatExpr
    var: str = "x"


@dataclass(frozen=True, eq=False)
class AsymEquation:
    registry: Registry
    ground: GroundSet
    loc: Dict[str, RatExpr]
    rho: Dict[str, RatExpr]
    rho_inf: Tuple[RatExpr, RatExpr]
    accessory: Tuple[RatExpr, ...]
    p_coeff: RatExpr = field(default=None)
    r_coeff: RatExpr = field(default=None)
    var: str = "x"

    def __post_init__(self):
        if self.p_coeff is None:
            object.__setattr__(self, "p_coeff", predicted_p(self.registry, self.loc, self.rho, self.var))
        if self.r_coeff is None:
            object.__setattr__(
                self,
                "r_coeff",
                predicted_r(self.registry, self.loc, self.rho_inf, self.accessory, self.var),
            )

    @property
    def n(self) -> int:
        return len(self.ground)

    @property
    def finite(self) -> Tuple[str, ...]:
        return self.ground.finite

    def raw(self) -> RawEquation:
        return RawEquation(self.registry, self.p_coeff, self.r_coeff, self.var)

    def exponent_sum(self) -> RatExpr:
        s = self.rho_inf[0] + self.rho_inf[1]
        for d in self.finite:
            s = s + self.rho[d]
        return s

    def same_data(self, other: "AsymEquation") -> bool:
        """Exact equality of points, exponents and accessory parameters."""
        return (
            self.ground == other.ground
            and all(self.loc[d] == other.loc[d] and self.rho[d] == other.rho[d] for d in self.finite)
            and self.rho_inf == other.rho_inf
            and self.accessory == other.accessory
        )

    def __eq__(self, other):
        if not isinstance(other, AsymEquation):
            return NotImplemented
        return self.same_data(other)

    __hash__ = None


def predicted_p(registry, loc, rho, var="x") -> RatExpr:
    x = _sym(registry, var)
    p = RatExpr.const(registry, 0)
    for d, e in loc.items():
        p = p + (1 - rho[d]) / (x - e)
    return p


def point_product(registry, loc, var="x") -> RatExpr:
    x = _sym(registry, var)
    out = RatExpr.const(registry, 1)
    for e in loc.values():
        out = out * (x - e)
    return out


def predicted_r(registry, loc, rho_inf, accessory, var="x") -> RatExpr:
    x = _sym(registry, var)
    n = len(loc) + 1
    num = rho_inf[0] * rho_inf[1] * x ** (n - 3)
    for k, Q in enumerate(accessory):
        num = num - Q * x**k
    return num / point_product(registry, loc, var)


def heun_equation(p: HeunParams | None = None, registry: Registry = HEUN) -> AsymEquation:
    """E_asym(0, 1-gamma; 1, 1-delta; inf, alpha, beta; a, 1-epsilon; q)."""
    p = p or HeunParams.symbolic(registry)
    v = {k: coerce(registry, val) for k, val in p.as_dict().items()}
    a = v["a"]
    if a.is_zero() or (a - 1).is_zero():
        raise DegenerateA(f"a must avoid 0 and 1 (got {a})")
    eps = v["alpha"] + v["beta"] - v["gamma"] - v["delta"] + 1
    zero, one = RatExpr.const(registry, 0), RatExpr.const(registry, 1)
    x = _sym(registry, "x")
    eq = AsymEquation(
        registry,
        HEUN_POINTS,
        {"0": zero, "1": one, "a": a},
        {"0": 1 - v["gamma"], "1": 1 - v["delta"], "a": 1 - eps},
        (v["alpha"], v["beta"]),
        (v["q"],),
        v["gamma"] / x + v["delta"] / (x - 1) + eps / (x - a),
        (v["alpha"] * v["beta"] * x - v["q"]) / (x * (x - 1) * (x - a)),
    )
    return eq


def hypergeometric_equation(p: HypergeomParams | None = None, registry: Registry = HYPERGEOMETRIC) -> AsymEquation:
    """E_asym(0, 1-c; 1, c-a-b; inf, a, b)."""
    p = p or HypergeomParams.symbolic(registry)
    a, b, c = (coerce(registry, p.a), coerce(registry, p.b), coerce(registry, p.c))
    zero, one = RatExpr.const(registry, 0), RatExpr.const(registry, 1)
    x = _sym(registry, "x")
    return AsymEquation(
        registry,
        KUMMER_POINTS,
        {"0": zero, "1": one},
        {"0": 1 - c, "1": c - a - b},
        (a, b),
        (),
        c / x + (a + b - c + 1) / (x - 1),
        a * b / (x * (x - 1)),
    )


def pullback(eq, m: MobiusMap) -> RawEquation:
    """Equation satisfied by u(m(y)), written again in the variable x."""
    raw = eq.raw() if isinstance(eq, AsymEquation) else eq
    reg, var = raw.registry, raw.var
    A, B, C, D = (coerce(reg, v) for v in m.entries)
    det = A * D - B * C
    if det.is_zero():
        raise DegenerateMap("pullback by a singular map")
    x = _sym(reg, var)
    cxd = C * x + D
    phi = (A * x + B) / cxd
    dphi = det / cxd**2
    p_phi = substitute(raw.p, {var: phi})
    r_phi = substitute(raw.r, {var: phi})
    p_new = p_phi * dphi + 2 * C / cxd
    r_new = r_phi * dphi * dphi
    return RawEquation(reg, p_new, r_new, var)


def gauge(eq, shifts: Mapping[RatExpr, RatExpr] | Mapping[str, RatExpr], loc: Mapping[str, RatExpr] | None = None) -> RawEquation:
    """Equation satisfied by S(x) u(x) with S = prod (x - e)^{s_e}.

    ``shifts`` maps locations (or, with ``loc``, point labels) to s_e.
    """
    raw = eq.raw() if isinstance(eq, AsymEquation) else eq
    reg, var = raw.registry, raw.var
    if loc is None and isinstance(eq, AsymEquation):
        loc = eq.loc
    x = _sym(reg, var)
    L = RatExpr.const(reg, 0)
    dL = RatExpr.const(reg, 0)
    for key, s in shifts.items():
        s = coerce(reg, s)
        if s.is_zero():
            continue
        e = loc[key] if isinstance(key, str) else key
        L = L + s / (x - e)
        dL = dL - s / (x - e) ** 2
    if L.is_zero():
        return RawEquation(reg, raw.p, raw.r, var)
    p_new = raw.p - 2 * L
    r_new = raw.r - raw.p * L + L * L - dL
    return RawEquation(reg, p_new, r_new, var)


def residue(e: RatExpr, at: RatExpr, order: int = 1, var: str = "x") -> RatExpr:
    """lim_{x->at} (x - at)^order * e."""
    x = _sym(e.registry, var)
    return substitute(e * (x - at) ** order, {var: at})


def indicial_roots_sum_product(raw: RawEquation, at: RatExpr):
    """(sum, product) of the indicial roots at a finite regular singular point:
    rho^2 + (p0 - 1) rho + r0 = 0."""
    p0 = residue(raw.p, at, 1, raw.var)
    r0 = residue(raw.r, at, 2, raw.var)
    return 1 - p0, r0


def read_asym(
    raw: RawEquation,
    ground: GroundSet,
    loc: Mapping[str, RatExpr],
    rho: Mapping[str, RatExpr],
    rho_inf: Tuple[RatExpr, RatExpr],
    check_p: bool = True,
) -> AsymEquation:
    """Package a raw equation whose exponent data is known, reading the
    accessory parameters off r."""
    reg, var = raw.registry, raw.var
    if check_p:
        want = predicted_p(reg, loc, rho, var)
        if raw.p != want:
            raise NotAsymShape(f"p has residues inconsistent with the predicted exponents: {raw.p} vs {want}")
    n = len(ground)
    N = raw.r * point_product(reg, loc, var)
    try:
        coeffs = N.coefficients_in(var)
    except ValueError:
        raise NotAsymShape(f"r*prod(x-d) is not polynomial in {var}: {N}") from None
    top = max(coeffs, default=-1)
    if top > n - 3:
        raise NotAsymShape(f"r*prod(x-d) has degree {top} > {n - 3}")
    lead = coeffs.get(n - 3, RatExpr.const(reg, 0))
    if lead != rho_inf[0] * rho_inf[1]:
        raise NotAsymShape(f"leading coefficient {lead} differs from rho_inf*rho_inf_hat")
    accessory = tuple(-coeffs.get(k, RatExpr.const(reg, 0)) for k in range(n - 3))
    return AsymEquation(reg, ground, dict(loc), dict(rho), tuple(rho_inf), accessory, raw.p, raw.r, var)


def extract_heun_params(eq: AsymEquation) -> HeunParams:
    """(a', q'; alpha', beta', gamma', delta') of an equation in Heun shape."""
    if eq.ground != HEUN_POINTS:
        raise NotHeunShape("expected the ground set (0, 1, inf, a)")
    reg = eq.registry
    x = _sym(reg, eq.var)
    a = eq.loc["a"]
    if eq.loc["0"] != 0 or eq.loc["1"] != 1:
        raise NotHeunShape("finite points must be 0, 1, a")
    N = eq.r_coeff * x * (x - 1) * (x - a)
    try:
        coeffs = N.coefficients_in(eq.var)
    except ValueError:
        raise NotHeunShape(f"r*x(x-1)(x-a) is not polynomial: {N}") from None
    if max(coeffs, default=0) > 1:
        raise NotHeunShape("r*x(x-1)(x-a) has degree above 1")
    alpha, beta = eq.rho_inf
    if coeffs.get(1, RatExpr.const(reg, 0)) != alpha * beta:
        raise NotHeunShape("leading coefficient differs from alpha'*beta'")
    q = -coeffs.get(0, RatExpr.const(reg, 0))
    gamma, delta = 1 - eq.rho["0"], 1 - eq.rho["1"]
    params = HeunParams(a, q, alpha, beta, gamma, delta)
    if 1 - eq.rho["a"] != params.epsilon:
        raise NotHeunShape("exponent at a violates epsilon = alpha+beta-gamma-delta+1")
    return params


def extract_hypergeom_params(eq: AsymEquation) -> HypergeomParams:
    if eq.ground != KUMMER_POINTS:
        raise NotAsymShape("expected the ground set (0, 1, inf)")
    a, b = eq.rho_inf
    c = 1 - eq.rho["0"]
    if eq.rho["1"] != c - a - b:
        raise NotAsymShape("exponent at 1 violates c - a - b")
    return HypergeomParams(a, b, c)
