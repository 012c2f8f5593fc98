"""Action of a signed permutation g on an asymmetric equation.

For g with underlying permutation sigma, the new variable is x' = P(x) where
P sends the points labelled sigma^{-1}(0), sigma^{-1}(1), sigma^{-1}(inf) to
0, 1, inf.  A gauge S(x') = prod (x' - e)^{s_e} then restores one zero
exponent at every finite point:

* a finite point e whose preimage is inf inherits (rho_inf, rho_inf_hat) and
  is shifted by s_e = -rho_inf;
* a negative sign on the mapping into a finite e negates its exponent via
  s_e = -rho'_e;
* a negative sign on the mapping into inf swaps the ordered infinity pair.

Solutions transform as u(x) = A(x) u'(P x) with A = S(P x)^{-1}, which is
recorded as exponents over the original finite points.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from ..coxeter import (
    GroundSet,
    GroundSetMismatch,
    NotEvenSigned,
    SignedPermutation,
    is_even,
)
from ..exactalg import RatExpr
from ..projective import INF, MobiusMap, apply, mobius_through
from .equations import AsymEquation, gauge, pullback, read_asym


@dataclass(frozen=True)
class Transform:
    """Result of applying g: new equation, prefactor exponents over the
    original finite points, the argument map x -> x', and the index shifts
    applied at the new finite points."""

    g: SignedPermutation
    equation: AsymEquation
    prefactor: Dict[str, RatExpr]
    argument: MobiusMap
    shifts: Dict[str, RatExpr]

    def __iter__(self):
        return iter((self.equation, self.prefactor, self.argument))


def _loc(eq: AsymEquation, label: str):
    return INF if label == "inf" else eq.loc[label]


def predict(g: SignedPermutation, eq: AsymEquation):
    """Exponent bookkeeping only: (P, new locations, rho', rho_inf', shifts)."""
    reg = eq.registry
    zero = RatExpr.const(reg, 0)
    sigma_inv = g.preimage
    P = mobius_through(_loc(eq, sigma_inv("0")), _loc(eq, sigma_inv("1")), _loc(eq, sigma_inv("inf")))
    new_loc = {}
    for e in eq.finite:
        img = apply(P, _loc(eq, sigma_inv(e)))
        new_loc[e] = img if isinstance(img, RatExpr) else RatExpr.const(reg, img)
    rho = {}
    shifts = {e: zero for e in eq.finite}
    r_inf, r_inf_hat = eq.rho_inf
    for e in eq.finite:
        d = sigma_inv(e)
        if d == "inf":
            shifts[e] = -r_inf
            rho[e] = r_inf_hat - r_inf
        else:
            rho[e] = eq.rho[d]
    d0 = sigma_inv("inf")
    pair = [zero, eq.rho[d0]] if d0 != "inf" else [r_inf, r_inf_hat]
    total = zero
    for s in shifts.values():
        total = total + s
    pair = [pair[0] - total, pair[1] - total]
    for e in eq.finite:
        if g.sign_of(sigma_inv(e)) < 0:
            shifts[e] = shifts[e] - rho[e]
            pair = [pair[0] + rho[e], pair[1] + rho[e]]
            rho[e] = -rho[e]
    if g.sign_of(d0) < 0:
        pair.reverse()
    return P, new_loc, rho, tuple(pair), shifts


def prefactor_from_shifts(g: SignedPermutation, eq: AsymEquation, shifts: Dict[str, RatExpr]) -> Dict[str, RatExpr]:
    """Exponents nu over the original points of A(x) = S(P x)^{-1}.

    P(x) - P(y) is proportional to (x - y)/((x - d0)(y - d0)) with d0 the
    preimage of inf, so each factor (P x - e)^{-s_e} contributes -s_e at the
    preimage of e and +s_e at d0 (finite points only).
    """
    reg = eq.registry
    nu = {d: RatExpr.const(reg, 0) for d in eq.finite}
    d0 = g.preimage("inf")
    for e, s in shifts.items():
        if s.is_zero():
            continue
        src = g.preimage(e)
        if src != "inf":
            nu[src] = nu[src] - s
        if d0 != "inf":
            nu[d0] = nu[d0] + s
    return nu


def apply_element(g: SignedPermutation, eq: AsymEquation, extend: bool = False) -> Transform:
    """Apply g to ``eq``: pull back by P^{-1}, gauge, and read off the result.

    Odd-signed g are accepted only with ``extend=True``.
    """
    if g.ground != eq.ground:
        raise GroundSetMismatch(f"{g.ground.points} vs {eq.ground.points}")
    if not extend and not is_even(g):
        raise NotEvenSigned(f"{g} is odd-signed; pass extend=True to allow it")
    P, new_loc, rho, pair, shifts = predict(g, eq)
    raw = pullback(eq, P.inverse())
    raw = gauge(raw, {new_loc[e]: s for e, s in shifts.items()})
    new_eq = read_asym(raw, eq.ground, new_loc, rho, pair)
    return Transform(g, new_eq, prefactor_from_shifts(g, eq, shifts), P, shifts)


def compose_transforms(outer: Transform, inner: Transform) -> Tuple[Dict[str, RatExpr], MobiusMap]:
    """Prefactor and argument of ``outer`` applied after ``inner``, with the
    prefactor re-expressed over the points of inner's source equation."""
    g = inner.g
    reg = inner.equation.registry
    finite = inner.equation.finite
    nu = {d: inner.prefactor[d] for d in finite}
    d0 = g.preimage("inf")
    for e, v in outer.prefactor.items():
        if v.is_zero():
            continue
        src = g.preimage(e)
        if src != "inf":
            nu[src] = nu[src] + v
        if d0 != "inf":
            nu[d0] = nu[d0] - v
    return {d: nu[d] if d in nu else RatExpr.const(reg, 0) for d in finite}, outer.argument.compose(inner.argument)


def transform_chain(elements, eq: AsymEquation, extend: bool = False):
    """Apply elements left to right (the first listed acts first)."""
    steps = []
    cur = eq
    for g in elements:
        t = apply_element(g, cur, extend=extend)
        steps.append(t)
        cur = t.equation
    return steps


def ground_for(eq: AsymEquation) -> GroundSet:
    return eq.ground
