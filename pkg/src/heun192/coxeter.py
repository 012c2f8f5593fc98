"""Signed permutations of a named set of singular points.

The hyperoctahedral group B_n is the group of all signed permutations of an
n-set; D_n is its index-2 subgroup of even-signed ones.  Elements are written
in annotated cycle notation, e.g. ``[1+ a- inf+]`` for 1 -> a -> -inf -> 1.
The sign written after a point belongs to the mapping *out of* that point.

Composition is right to left: ``compose(g, h)`` applies ``h`` first.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple


class GroundSetMismatch(ValueError):
    pass


class CycleSyntaxError(SyntaxError):
    pass


class UnknownPoint(KeyError):
    pass


class DuplicatePoint(ValueError):
    pass


class NotEvenSigned(ValueError):
    pass


@dataclass(frozen=True)
class GroundSet:
    points: Tuple[str, ...]

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise ValueError(f"point names must be distinct: {self.points}")

    @classmethod
    def standard(cls, n: int) -> "GroundSet":
        """(0, 1, inf) for n=3, (0, 1, inf, a) for n=4, else a1..a_{n-3}."""
        if n < 3:
            raise ValueError("a singular-point ground set has at least 3 points")
        if n == 3:
            return cls(("0", "1", "inf"))
        if n == 4:
            return cls(("0", "1", "inf", "a"))
        return cls(("0", "1", "inf") + tuple(f"a{i}" for i in range(1, n - 2)))

    def __len__(self):
        return len(self.points)

    def index(self, name):
        try:
            return self.points.index(name)
        except ValueError:
            raise UnknownPoint(name) from None

    @property
    def finite(self) -> Tuple[str, ...]:
        return tuple(p for p in self.points if p != "inf")


#: Ground sets used throughout.
KUMMER_POINTS = GroundSet.standard(3)
HEUN_POINTS = GroundSet.standard(4)
#: Points permuted by the transformation group of Hl (the stabilizer of 0).
HL_POINTS = GroundSet(("1", "a", "inf"))


@dataclass(frozen=True)
class SignedPermutation:
    ground: GroundSet
    image: Tuple[int, ...]
    sign: Tuple[int, ...]

    @classmethod
    def identity(cls, ground: GroundSet) -> "SignedPermutation":
        n = len(ground)
        return cls(ground, tuple(range(n)), (1,) * n)

    @classmethod
    def from_maps(cls, ground: GroundSet, image: Dict[str, str], sign: Dict[str, int] | None = None):
        sign = sign or {}
        img = tuple(ground.index(image.get(p, p)) for p in ground.points)
        if sorted(img) != list(range(len(ground))):
            raise ValueError("image is not a bijection")
        return cls(ground, img, tuple(sign.get(p, 1) for p in ground.points))

    def __call__(self, point: str) -> str:
        return self.ground.points[self.image[self.ground.index(point)]]

    def sign_of(self, point: str) -> int:
        return self.sign[self.ground.index(point)]

    def preimage(self, point: str) -> str:
        j = self.ground.index(point)
        return self.ground.points[self.image.index(j)]

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        return compose(self, other)

    def __str__(self):
        return format_cycles(self)

    def __repr__(self):
        return f"SignedPermutation({format_cycles(self)!r})"


def compose(g: SignedPermutation, h: SignedPermutation) -> SignedPermutation:
    """The product g*h, acting as h first and then g."""
    if g.ground != h.ground:
        raise GroundSetMismatch(f"{g.ground.points} vs {h.ground.points}")
    image = tuple(g.image[j] for j in h.image)
    sign = tuple(h.sign[i] * g.sign[h.image[i]] for i in range(len(h.image)))
    return SignedPermutation(g.ground, image, sign)


def inverse(g: SignedPermutation) -> SignedPermutation:
    n = len(g.image)
    image = [0] * n
    sign = [1] * n
    for i, j in enumerate(g.image):
        image[j] = i
        sign[j] = g.sign[i]
    return SignedPermutation(g.ground, tuple(image), tuple(sign))


def conjugate(g: SignedPermutation, by: SignedPermutation) -> SignedPermutation:
    """by^{-1} * g * by."""
    return compose(compose(inverse(by), g), by)


def is_identity(g: SignedPermutation) -> bool:
    return g.image == tuple(range(len(g.image))) and all(s == 1 for s in g.sign)


def is_even(g: SignedPermutation) -> bool:
    return sum(1 for s in g.sign if s < 0) % 2 == 0


def element_order(g: SignedPermutation) -> int:
    k, p = 1, g
    while not is_identity(p):
        p = compose(g, p)
        k += 1
    return k


def enumerate_group(group: str, ground: GroundSet) -> List[SignedPermutation]:
    """All elements of B_n or D_n.

    Unsigned permutations run in lexicographic one-line order; for each, sign
    patterns run in binary counting order (``+`` before ``-``, last point
    fastest).  For D_n the patterns range over the finite points and the sign
    at ``inf`` is forced by evenness.
    """
    n = len(ground)
    if group not in ("B", "D"):
        raise ValueError("group must be 'B' or 'D'")
    out = []
    has_inf = "inf" in ground.points
    k_inf = ground.points.index("inf") if has_inf else n - 1
    for perm in itertools.permutations(range(n)):
        if group == "B":
            patterns = itertools.product((1, -1), repeat=n)
            for s in patterns:
                out.append(SignedPermutation(ground, perm, s))
        else:
            for s in itertools.product((1, -1), repeat=n - 1):
                neg = sum(1 for v in s if v < 0)
                full = list(s)
                full.insert(k_inf, -1 if neg % 2 else 1)
                out.append(SignedPermutation(ground, perm, tuple(full)))
    return out


def coxeter_generators(group: str, ground: GroundSet) -> List[SignedPermutation]:
    """sigma_i = [i+ (i+1)+] for i < n, plus [n-] (B_n) or [(n-1)- n-] (D_n).

    Points are numbered in ground-set order.  For D_1 no generator exists and
    an empty list is returned; D_2 and D_3 are the degenerate cases noted for
    the even-signed groups.
    """
    pts = ground.points
    n = len(pts)
    gens = []
    for i in range(n - 1):
        gens.append(SignedPermutation.from_maps(ground, {pts[i]: pts[i + 1], pts[i + 1]: pts[i]}))
    if group == "B":
        gens.append(SignedPermutation.from_maps(ground, {}, {pts[n - 1]: -1}))
    elif group == "D":
        if n >= 2:
            gens.append(
                SignedPermutation.from_maps(
                    ground,
                    {pts[n - 2]: pts[n - 1], pts[n - 1]: pts[n - 2]},
                    {pts[n - 2]: -1, pts[n - 1]: -1},
                )
            )
    else:
        raise ValueError("group must be 'B' or 'D'")
    return gens


def closure(generators: Iterable[SignedPermutation]) -> List[SignedPermutation]:
    """Breadth-first closure of a generating set under composition."""
    gens = list(generators)
    if not gens:
        return []
    e = SignedPermutation.identity(gens[0].ground)
    seen = {e}
    frontier = [e]
    order = [e]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = compose(s, g)
                if h not in seen:
                    seen.add(h)
                    order.append(h)
                    nxt.append(h)
        frontier = nxt
    return order


# -- annotated cycle notation ----------------------------------------------

_ITEM = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|\d+)\s*([+-])")


def parse_cycles(text: str, ground: GroundSet) -> SignedPermutation:
    """Parse e.g. ``"[1+ a- inf+]"``; omitted points are positive fixed points."""
    n = len(ground)
    image = list(range(n))
    sign = [1] * n
    used = set()
    pos = 0
    text_len = len(text)
    while True:
        while pos < text_len and text[pos].isspace():
            pos += 1
        if pos >= text_len:
            break
        if text[pos] != "[":
            raise CycleSyntaxError(f"expected '[' at position {pos} in {text!r}")
        pos += 1
        items = []
        while True:
            while pos < text_len and text[pos].isspace():
                pos += 1
            if pos < text_len and text[pos] == "]":
                pos += 1
                break
            m = _ITEM.match(text, pos)
            if m is None:
                raise CycleSyntaxError(f"expected point and sign at position {pos} in {text!r}")
            name = m.group(1)
            if name not in ground.points:
                raise UnknownPoint(f"unknown point {name!r} at position {m.start(1)} in {text!r}")
            k = ground.index(name)
            if k in used:
                raise DuplicatePoint(f"point {name!r} appears twice in {text!r}")
            used.add(k)
            items.append((k, 1 if m.group(2) == "+" else -1))
            pos = m.end()
        if not items:
            raise CycleSyntaxError(f"empty cycle in {text!r}")
        for idx, (k, s) in enumerate(items):
            image[k] = items[(idx + 1) % len(items)][0]
            sign[k] = s
    return SignedPermutation(ground, tuple(image), tuple(sign))


def cycles(g: SignedPermutation) -> List[List[Tuple[str, int]]]:
    """Disjoint cycles as lists of (point, sign).

    The cycle through 0 (if present) comes first and starts at the point
    mapped to 0; the rest follow in ground order of their first point.
    """
    pts = g.ground.points
    n = len(pts)
    seen = [False] * n
    out = []
    starts = list(range(n))
    if "0" in pts:
        z = pts.index("0")
        starts.remove(g.image.index(z))
        starts.insert(0, g.image.index(z))
    for s in starts:
        if seen[s]:
            continue
        cyc = []
        k = s
        while not seen[k]:
            seen[k] = True
            cyc.append((pts[k], g.sign[k]))
            k = g.image[k]
        out.append(cyc)
    return out


def format_cycles(g: SignedPermutation, omit_fixed: bool = False) -> str:
    parts = []
    for cyc in cycles(g):
        if omit_fixed and len(cyc) == 1 and cyc[0][1] == 1:
            continue
        parts.append("[" + " ".join(f"{p}{'+' if s > 0 else '-'}" for p, s in cyc) + "]")
    return "".join(parts)


# -- the isomorphism D_3 -> S_4 ----------------------------------------------


@dataclass(frozen=True)
class S4Perm:
    """Permutation of {1, 2, 3, 4}; ``image[i-1]`` is the image of i."""

    image: Tuple[int, ...]

    @classmethod
    def parse(cls, text: str) -> "S4Perm":
        img = [1, 2, 3, 4]
        for cyc in re.findall(r"\(([^()]*)\)", text):
            digits = [int(c) for c in cyc if c.isdigit()]
            for idx, d in enumerate(digits):
                img[d - 1] = digits[(idx + 1) % len(digits)]
        return cls(tuple(img))

    def __mul__(self, other: "S4Perm") -> "S4Perm":
        return S4Perm(tuple(self.image[other.image[i] - 1] for i in range(4)))

    def inverse(self) -> "S4Perm":
        img = [0] * 4
        for i, j in enumerate(self.image):
            img[j - 1] = i + 1
        return S4Perm(tuple(img))

    def __str__(self):
        seen = set()
        parts = []
        for i in range(1, 5):
            if i in seen or self.image[i - 1] == i:
                continue
            cyc = []
            k = i
            while k not in seen:
                seen.add(k)
                cyc.append(str(k))
                k = self.image[k - 1]
            parts.append("(" + "".join(cyc) + ")")
        return "".join(parts) or "()"


_D3_TO_S4_TABLE = {
    "[1+][a+][inf+]": "()",
    "[1-][a+][inf-]": "(12)(34)",
    "[1+][a-][inf-]": "(13)(24)",
    "[1-][a-][inf+]": "(14)(23)",
    "[1+ inf+][a+]": "(12)",
    "[1- inf-][a+]": "(34)",
    "[1- inf+][a-]": "(1423)",
    "[1+ inf-][a-]": "(1324)",
    "[1+ a+][inf+]": "(14)",
    "[1+ a-][inf-]": "(1342)",
    "[1- a+][inf-]": "(1243)",
    "[1- a-][inf+]": "(23)",
    "[1+ a+ inf+]": "(142)",
    "[1+ a- inf-]": "(134)",
    "[1- a- inf+]": "(123)",
    "[1- a+ inf-]": "(243)",
    "[1+][a+ inf+]": "(24)",
    "[1-][a- inf+]": "(1234)",
    "[1+][a- inf-]": "(13)",
    "[1-][a+ inf-]": "(1432)",
    "[1+ inf+ a+]": "(124)",
    "[1- inf+ a-]": "(234)",
    "[1- inf- a+]": "(143)",
    "[1+ inf- a-]": "(132)",
}

_D3_TO_S4 = {parse_cycles(k, HL_POINTS): S4Perm.parse(v) for k, v in _D3_TO_S4_TABLE.items()}


def restrict_to_hl(g: SignedPermutation) -> SignedPermutation:
    """View an element of D_4 fixing [0+] as an element over (1, a, inf)."""
    if g.ground != HEUN_POINTS:
        raise GroundSetMismatch("expected an element over (0, 1, inf, a)")
    if g("0") != "0" or g.sign_of("0") != 1:
        raise ValueError(f"{g} does not contain the positive 1-cycle [0+]")
    return SignedPermutation.from_maps(
        HL_POINTS,
        {p: g(p) for p in HL_POINTS.points},
        {p: g.sign_of(p) for p in HL_POINTS.points},
    )


def d3_to_s4(g: SignedPermutation) -> S4Perm:
    """The isomorphism from the even-signed permutations of (1, a, inf) to S_4."""
    if g.ground == HEUN_POINTS:
        g = restrict_to_hl(g)
    if g.ground != HL_POINTS:
        raise GroundSetMismatch("expected an element over (1, a, inf)")
    if not is_even(g):
        raise NotEvenSigned(str(g))
    return _D3_TO_S4[g]


def s4_to_d3(p: S4Perm) -> SignedPermutation:
    for g, q in _D3_TO_S4.items():
        if q == p:
            return g
    raise KeyError(str(p))


def parse_element(text: str, ground: GroundSet = HEUN_POINTS) -> SignedPermutation:
    return parse_cycles(text, ground)


def group_elements(ground: GroundSet, even: bool = True) -> List[SignedPermutation]:
    return enumerate_group("D" if even else "B", ground)


def subgroup_generated(gens: Sequence[SignedPermutation]) -> List[SignedPermutation]:
    return closure(gens)
