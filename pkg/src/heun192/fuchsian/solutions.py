"""The 24 (hypergeometric) and 192 (Heun) local solutions, their classes,
pairing, and exact structural checks on parameter space."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from ..coxeter import (
    HEUN_POINTS,
    KUMMER_POINTS,
    SignedPermutation,
    compose,
    conjugate,
    enumerate_group,
    inverse,
    parse_cycles,
)
from ..exactalg import RatExpr, coerce, format_expr, substitute
from ..projective import MobiusMap
from .equations import (
    AsymEquation,
    HeunParams,
    HypergeomParams,
    extract_heun_params,
    extract_hypergeom_params,
    heun_equation,
    hypergeometric_equation,
)
from .transform import Transform, apply_element, compose_transforms

FIRST, SECOND = "first", "second"
CLASS_POINTS = ("0", "1", "a", "inf")


@dataclass(frozen=True, eq=False)
class LocalSolution:
    g: SignedPermutation
    prefactor: Dict[str, RatExpr]
    argument: MobiusMap
    params: object
    cls: Tuple[str, str]
    transform: Transform
    source_loc: Dict[str, RatExpr]

    @property
    def index_g(self) -> SignedPermutation:
        return self.g

    @property
    def n(self) -> int:
        return len(self.g.ground)

    def bases(self) -> Dict[str, RatExpr]:
        return prefactor_bases(self.transform.equation.registry, self.source_loc, self.cls[0])

    def same_content(self, other: "LocalSolution") -> bool:
        return (
            self.g == other.g
            and self.cls == other.cls
            and all(self.prefactor[d] == other.prefactor[d] for d in self.prefactor)
            and self.argument == other.argument
            and self.params == other.params
        )


def classify(s: LocalSolution) -> Tuple[str, str]:
    return s.cls


def class_of(g: SignedPermutation) -> Tuple[str, str]:
    d = g.preimage("0")
    return d, SECOND if g.sign_of(d) < 0 else FIRST


def prefactor_bases(registry, loc: Dict[str, RatExpr], point: str) -> Dict[str, RatExpr]:
    """Normalized bases for a class at ``point``.

    At a finite point d the base for e != d is (x - e)/(d - e), which is 1
    at d, and the base for d is (x - d); at infinity every base is (x - e).
    """
    x = RatExpr.symbol(registry, "x")
    out = {}
    for e, le in loc.items():
        if point == "inf" or e == point:
            out[e] = x - le
        else:
            out[e] = (x - le) / (loc[point] - le)
    return out


_BASE_TEXT = {
    ("0", "1"): "1-x",
    ("0", "a"): "1-x/a",
    ("1", "0"): "x",
    ("1", "a"): "(x-a)/(1-a)",
    ("a", "0"): "x/a",
    ("a", "1"): "(x-1)/(a-1)",
}


def base_text(point: str, e: str) -> str:
    if point == "inf" or point == e:
        return "x" if e == "0" else f"x-{e}"
    return _BASE_TEXT[(point, e)]


def _make_solution(g, eq, t: Transform) -> LocalSolution:
    if eq.ground == HEUN_POINTS:
        params = extract_heun_params(t.equation)
    else:
        params = extract_hypergeom_params(t.equation)
    return LocalSolution(g, t.prefactor, t.argument, params, class_of(g), t, dict(eq.loc))


def local_solution(g: SignedPermutation, p=None, extend: bool = False, eq: AsymEquation | None = None) -> LocalSolution:
    if eq is None:
        if isinstance(p, HypergeomParams) or (p is None and g.ground == KUMMER_POINTS):
            eq = hypergeometric_equation(p)
        else:
            eq = heun_equation(p)
    return _make_solution(g, eq, apply_element(g, eq, extend=extend))


def class_order():
    return [(d, b) for d in CLASS_POINTS for b in (FIRST, SECOND)]


def _sort_key_factory(points):
    order = {c: i for i, c in enumerate((d, b) for d in points for b in (FIRST, SECOND))}
    return lambda item: order[item[1].cls]


def generate_all(p=None, canonical_order: bool = True) -> List[LocalSolution]:
    """All local solutions, one per element of D_3 (hypergeometric) or D_4 (Heun).

    With ``canonical_order`` the rows are class-major, enumeration order
    within each class; otherwise plain enumeration order.
    """
    if isinstance(p, HypergeomParams):
        eq = hypergeometric_equation(p)
    elif p is None or isinstance(p, HeunParams):
        eq = heun_equation(p)
    else:
        raise TypeError("expected HeunParams or HypergeomParams")
    sols = [_make_solution(g, eq, apply_element(g, eq)) for g in enumerate_group("D", eq.ground)]
    if not canonical_order:
        return sols
    points = [d for d in CLASS_POINTS if d in eq.ground.points]
    key = _sort_key_factory(points)
    return [s for _, s in sorted(enumerate(sols), key=lambda it: (key(it), it[0]))]


def by_index(solutions: Sequence[LocalSolution]) -> Dict[SignedPermutation, LocalSolution]:
    return {s.g: s for s in solutions}


def group_classes(solutions: Sequence[LocalSolution]) -> Dict[Tuple[str, str], List[LocalSolution]]:
    out: Dict[Tuple[str, str], List[LocalSolution]] = {}
    for s in solutions:
        out.setdefault(s.cls, []).append(s)
    return out


# -- pairing by the a-homography ---------------------------------------------

A_HOMOGRAPHY = parse_cycles("[0+][1+ a+][inf+]", HEUN_POINTS)


def pair_partner(s: LocalSolution, solutions: Sequence[LocalSolution], side: str = "right") -> LocalSolution:
    """The row indexed by g*t (``side='right'``) or t*g, t = [0+][1+ a+][inf+]."""
    if side == "right":
        target = compose(s.g, A_HOMOGRAPHY)
    elif side == "left":
        target = compose(A_HOMOGRAPHY, s.g)
    else:
        raise ValueError("side must be 'right' or 'left'")
    for other in solutions:
        if other.g == target:
            return other
    raise KeyError(f"partner {target} of {s.g} not in the table")


def pairing_stats(solutions: Sequence[LocalSolution], side: str = "right") -> Dict[str, int]:
    fixed = 0
    pairs = set()
    involution = True
    for s in solutions:
        t = pair_partner(s, solutions, side)
        if t.g == s.g:
            fixed += 1
        if pair_partner(t, solutions, side).g != s.g:
            involution = False
        pairs.add(frozenset((s.g, t.g)))
    return {"fixed_points": fixed, "pairs": len(pairs), "involution": int(involution)}


def homography_image(s: LocalSolution) -> Dict[str, object]:
    """s rewritten by the a-homography: a -> 1/a, q -> q/a, delta -> epsilon,
    x -> x/a, with the prefactor labels 1 and a swapped.  For right pairing
    this is exactly the partner row."""
    reg = s.transform.equation.registry
    a = RatExpr.symbol(reg, "a")
    p = s.params
    b = {"a": 1 / a, "q": RatExpr.symbol(reg, "q") / a, "delta": HeunParams.symbolic(reg).epsilon}
    params = p.subs(b)
    A, B, C, D = (coerce(reg, v) for v in s.argument.entries)
    arg = MobiusMap(substitute(A, b), substitute(B, b) * a, substitute(C, b), substitute(D, b) * a)
    nu = {
        "0": substitute(s.prefactor["0"], b),
        "1": substitute(s.prefactor["a"], b),
        "a": substitute(s.prefactor["1"], b),
    }
    return {"params": params, "argument": arg, "prefactor": nu}


# -- exact checks on parameter space ---------------------------------------


def conjugation_identity_steps(eq: AsymEquation | None = None):
    """The three steps [0+ inf+], [1-][inf-], [0+ inf+]^{-1} and the direct
    application of their product [0-][1-][inf+]."""
    eq = eq or heun_equation()
    sigma = parse_cycles("[0+ inf+]", eq.ground)
    h = parse_cycles("[1-][inf-]", eq.ground)
    t1 = apply_element(sigma, eq)
    t2 = apply_element(h, t1.equation)
    t3 = apply_element(inverse(sigma), t2.equation)
    direct = apply_element(parse_cycles("[0-][1-][inf+]", eq.ground), eq)
    return t1, t2, t3, direct


def conjugation_identity_check(eq: AsymEquation | None = None) -> bool:
    t1, t2, t3, direct = conjugation_identity_steps(eq)
    return t3.equation.same_data(direct.equation)


def homomorphism_check(g: SignedPermutation, h: SignedPermutation, eq: AsymEquation, extend: bool = False) -> bool:
    """apply(g*h) == apply(g) after apply(h): equation, prefactor, argument."""
    th = apply_element(h, eq, extend=extend)
    tgh = apply_element(g, th.equation, extend=extend)
    direct = apply_element(compose(g, h), eq, extend=extend)
    nu, arg = compose_transforms(tgh, th)
    return (
        tgh.equation.same_data(direct.equation)
        and all(nu[d] == direct.prefactor[d] for d in eq.finite)
        and arg == direct.argument
    )


def twisted_composition_check(eq: AsymEquation | None = None) -> bool:
    """Euler [1-][inf-] equals the twisted square of Pfaff [1+ inf+]:
    conjugate(Pfaff, [inf-]) * Pfaff, on group level and on parameter space."""
    eq = eq or heun_equation()
    pfaff = parse_cycles("[1+ inf+]", eq.ground)
    flip = parse_cycles("[inf-]", eq.ground)
    euler = parse_cycles("[1-][inf-]", eq.ground)
    twisted = conjugate(pfaff, flip)
    if compose(twisted, pfaff) != euler:
        return False
    return homomorphism_check(twisted, pfaff, eq)


def random_pairs(count: int, seed: int, ground=HEUN_POINTS):
    rng = random.Random(seed)
    elems = enumerate_group("D", ground)
    return [(rng.choice(elems), rng.choice(elems)) for _ in range(count)]


def row_record(s: LocalSolution) -> Dict[str, object]:
    """Serializable row: g, class, prefactor, argument, params."""
    reg = s.transform.equation.registry
    point = s.cls[0]
    pref = []
    for e in s.prefactor:
        nu = s.prefactor[e]
        if not nu.is_zero():
            pref.append({"base": base_text(point, e), "exponent": format_expr(nu)})
    return {
        "g": str(s.g),
        "class": {"point": point, "branch": s.cls[1]},
        "prefactor": pref,
        "argument": format_expr(s.argument.to_expr(reg)),
        "params": {k: format_expr(coerce(reg, v)) for k, v in s.params.as_dict().items()},
    }
