import cmath
import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heun192.exactalg import HEUN, RatExpr, substitute
from heun192.projective import (
    INF,
    CoincidentPoints,
    DegenerateA,
    DegenerateMap,
    DegeneratePoints,
    MobiusMap,
    apply,
    chordal,
    dedup,
    heun_maps,
    kummer_maps,
    mobius_through,
    orbit_n4,
    orbit_n5,
    orbit_n5_images,
    stabilizer_n4,
)

a = RatExpr.symbol(HEUN, "a")


def same(u, v, tol=1e-12):
    return chordal(u, v) <= tol


# -- apply and mobius_through -----------------------------------------------------


def test_apply_identity():
    m = MobiusMap.identity()
    for p in (0, 1, 2.5 + 1j, INF):
        assert apply(m, p) == p or apply(m, p) is p


def test_apply_to_heun_anchors_symbolic():
    m = MobiusMap(1, 0, 1, -a)
    imgs = [apply(m, p) for p in (RatExpr.const(HEUN, 0), RatExpr.const(HEUN, 1), INF, a)]
    assert imgs[0] == 0
    assert imgs[1] == 1 / (1 - a)
    assert imgs[2] == 1
    assert imgs[3] is INF


def test_apply_conventions():
    m = MobiusMap(2, 1, 1, -3)
    assert apply(m, INF) == 2
    assert apply(m, 3) is INF
    assert apply(MobiusMap(1, 0, 0, 1), INF) is INF


def test_mobius_through_example_three():
    b = RatExpr.symbol(HEUN, "q")  # any second symbol stands in for b
    m = mobius_through(a, b, RatExpr.const(HEUN, 0))
    x = RatExpr.symbol(HEUN, "x")
    assert m.to_expr(HEUN) == b * (x - a) / ((b - a) * x)
    assert apply(m, a) == 0 and apply(m, b) == 1 and apply(m, RatExpr.const(HEUN, 0)) is INF


def test_mobius_through_identity_and_flip():
    assert mobius_through(0, 1, INF) == MobiusMap.identity()
    m = mobius_through(1, 0, INF)
    assert m == MobiusMap(-1, 1, 0, 1)
    assert apply(m, 1) == 0 and apply(m, 0) == 1 and apply(m, INF) is INF


@pytest.mark.parametrize("pts", list(itertools.permutations([0, 1, INF, a], 3)))
def test_mobius_through_anchors_exactly(pts):
    pts = [RatExpr.const(HEUN, p) if isinstance(p, int) else p for p in pts]
    m = mobius_through(*pts)
    assert m.is_symbolic
    out = [apply(m, p) for p in pts]
    assert out[0] == 0 and out[1] == 1 and out[2] is INF


def test_mobius_errors():
    with pytest.raises(CoincidentPoints):
        mobius_through(0, 0, 1)
    with pytest.raises(CoincidentPoints):
        mobius_through(INF, 1, INF)
    with pytest.raises(DegenerateMap):
        MobiusMap(1, 2, 2, 4)


def test_projective_equality():
    assert MobiusMap(2, 0, 0, 2) == MobiusMap.identity()
    assert MobiusMap(a, -a, 1, -a) == MobiusMap(a * 3, -a * 3, 3, -a * 3)
    assert MobiusMap(1, 0, 1, -1) != MobiusMap(1, 0, 0, 1)
    assert MobiusMap(2.0, 0.0, 0.0, 2.0) == MobiusMap(1, 0, 0, 1)


# -- the Kummer and Heun lists -----------------------------------------------------


def test_kummer_maps():
    ms = kummer_maps()
    assert len(ms) == 6 and ms[0] == MobiusMap.identity()
    x = RatExpr.symbol(HEUN, "x")
    expected = [x, x / (x - 1), 1 - x, (x - 1) / x, 1 / x, 1 / (1 - x)]
    assert [m.to_expr(HEUN) for m in ms] == expected
    for m in ms:
        img = {apply(m, p) if apply(m, p) is INF else complex(apply(m, p)) for p in (0, 1, INF)}
        assert img == {0, 1, INF}
    for m1, m2 in itertools.product(ms, ms):
        assert sum(m1.compose(m2) == m for m in ms) == 1


def test_heun_maps_rows():
    ms = heun_maps(a)
    assert len(ms) == 24 and ms[0] == MobiusMap.identity()
    anchors = [RatExpr.const(HEUN, 0), RatExpr.const(HEUN, 1), INF, a]
    for k, m in enumerate(ms):
        img = apply(m, anchors[k // 6])
        assert not (img is INF) and img == 0
    assert apply(MobiusMap(1, 0, 1, -a), a) is INF
    assert any(m == MobiusMap(1, 0, 1, -a) for m in ms[:6])


def test_heun_maps_exact_images_at_rational_a():
    av = Fraction(7, 3)
    kummer_images = set()
    for m in kummer_maps():
        z = apply(m, av)
        kummer_images.add(z)
    seen = set()
    for m in heun_maps(av):
        imgs = [apply(m, p) for p in (0, 1, INF, av)]
        finite = [z for z in imgs if z is not INF]
        assert imgs.count(INF) == 1
        assert 0 in finite and 1 in finite
        rest = [z for z in finite if z not in (0, 1)]
        assert len(rest) == 1 and rest[0] not in (0, 1)
        seen.add(rest[0])
    assert seen == kummer_images
    assert len(seen) == 6


def test_heun_maps_degenerate():
    for bad in (0, 1, INF):
        with pytest.raises(DegenerateA):
            heun_maps(bad)
    with pytest.raises(DegenerateA):
        stabilizer_n4(1)


def test_klein_stabilizer():
    ms = stabilizer_n4(a)
    assert ms[0] == MobiusMap.identity()
    anchors = {"0": RatExpr.const(HEUN, 0), "1": RatExpr.const(HEUN, 1), "inf": INF, "a": a}

    def name(z):
        if z is INF:
            return "inf"
        return next(k for k, v in anchors.items() if v is not INF and v == z)

    perms = [{k: name(apply(m, v)) for k, v in anchors.items()} for m in ms]
    assert perms[0] == {"0": "0", "1": "1", "inf": "inf", "a": "a"}
    assert perms[1] == {"0": "inf", "inf": "0", "1": "a", "a": "1"}
    assert perms[2] == {"0": "a", "a": "0", "1": "inf", "inf": "1"}
    assert perms[3] == {"0": "1", "1": "0", "a": "inf", "inf": "a"}
    for m1, m2 in itertools.product(ms, ms):
        assert sum(m1.compose(m2) == m for m in ms) == 1
    for m in ms[1:]:
        assert m.compose(m) == MobiusMap.identity()


# -- orbits ---------------------------------------------------------------------------


def test_orbit_n4_sizes():
    assert len(orbit_n4(3)) == 6
    want = [3, 1.5, 1 / 3, 2 / 3, -0.5, -2]
    got = orbit_n4(3)
    assert all(any(same(z, w) for z in got) for w in want)
    harm = orbit_n4(-1)
    assert len(harm) == 3
    assert all(any(same(z, w) for z in harm) for w in (-1, 0.5, 2))
    assert len(orbit_n4(0.5 + 1j * 3**0.5 / 2)) == 2


def test_orbit_n4_errors():
    with pytest.raises(DegenerateA):
        orbit_n4(1)
    with pytest.raises(DegenerateA):
        orbit_n4(0)


@pytest.mark.parametrize("z", [3, -1, 0.3 + 0.8j, 0.5 + 1j * 3**0.5 / 2, -4.5 + 2j])
def test_orbit_n4_invariance(z):
    orb = orbit_n4(z)
    for w in orb:
        other = orbit_n4(w)
        assert len(other) == len(orb)
        assert all(any(chordal(u, v) < 1e-9 for v in orb) for u in other)


def test_orbit_n4_matches_heun_map_images():
    z = 0.37 + 1.3j
    imgs = []
    for m in heun_maps(z):
        for p in (0, 1, INF, z):
            w = apply(m, p)
            if w is not INF and abs(w) > 1e-12 and abs(w - 1) > 1e-12:
                imgs.append(w)
    assert len(dedup(imgs)) == 6
    assert all(any(chordal(u, v) < 1e-9 for v in orbit_n4(z)) for u in imgs)


def test_orbit_n5_sizes():
    assert len(orbit_n5_images(0.3 + 0.2j, -1.7 + 0.4j)) == 120
    assert len(orbit_n5(0.3 + 0.2j, -1.7 + 0.4j)) == 120
    assert len(orbit_n5((1 + 1j) / 2, (1 - 1j) / 2)) == 30
    assert len(orbit_n5((1 + 1j * 3**0.5) / 2, (1 - 1j * 3**0.5) / 2)) == 20
    s5 = 5**0.5
    assert len(orbit_n5((3 + s5) / 2, (-1 - s5) / 2)) == 12
    assert len(orbit_n5(0.25, 0.75)) <= 60


def test_orbit_n5_degenerate():
    with pytest.raises(DegeneratePoints):
        orbit_n5(0.5, 0.5)
    with pytest.raises(DegeneratePoints):
        orbit_n5(1, 0.5)


def test_chordal():
    assert chordal(INF, INF) == 0
    assert abs(chordal(0, INF) - 2) < 1e-15
    assert chordal(1e12, INF) < 1e-11
    assert abs(chordal(1, -1) - 2) < 1e-15


# -- invariants -------------------------------------------------------------------------

cplx = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@settings(max_examples=300, deadline=None)
@given(st.tuples(cplx, cplx, cplx, cplx), st.tuples(cplx, cplx, cplx, cplx), cplx)
def test_composition_action_numeric(e1, e2, p):
    if abs(e1[0] * e1[3] - e1[1] * e1[2]) < 1e-3 or abs(e2[0] * e2[3] - e2[1] * e2[2]) < 1e-3:
        return
    m1, m2 = MobiusMap(*e1), MobiusMap(*e2)
    lhs = apply(m1.compose(m2), p)
    rhs = apply(m1, apply(m2, p))
    if lhs is INF or rhs is INF:
        return
    # the action is only well conditioned away from poles
    if abs(m2.C * p + m2.D) < 1e-3 or abs(m1.compose(m2).C * p + m1.compose(m2).D) < 1e-3:
        return
    assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(rhs))


def test_composition_action_symbolic():
    x = RatExpr.symbol(HEUN, "x")
    ms = heun_maps(a)
    for m1, m2 in [(ms[1], ms[7]), (ms[13], ms[22]), (ms[4], ms[17])]:
        c = m1.compose(m2)
        assert c.to_expr(HEUN) == substitute(m1.to_expr(HEUN), {"x": m2.to_expr(HEUN)})
        assert apply(c, x) == apply(m1, apply(m2, x))


def test_inverse():
    m = MobiusMap(1, -a, a, -a)
    assert m.compose(m.inverse()) == MobiusMap.identity()
    n = MobiusMap(1 + 2j, 3, -1j, 2)
    assert n.inverse().compose(n) == MobiusMap.identity()
    assert abs(cmath.phase(complex(n.determinant())) - cmath.phase(complex((1 + 2j) * 2 + 3j))) < 1e-15
