"""End-to-end acceptance checks, one test per criterion.

Each test records a single PASS/FAIL line (see conftest) before asserting,
so the terminal summary lists every criterion even when one fails.
"""
import itertools
import time

from hypothesis import HealthCheck, given, settings

from _tables import HEUN_QUOTED, KUMMER_24, KUMMER_CLASSES
from conftest import record
from heun192.coxeter import (
    HEUN_POINTS,
    HL_POINTS,
    KUMMER_POINTS,
    S4Perm,
    compose,
    conjugate,
    d3_to_s4,
    element_order,
    enumerate_group,
    is_even,
    parse_cycles,
)
from heun192.exactalg import HEUN, HYPERGEOMETRIC, format_expr, parse
from heun192.fuchsian import (
    HeunParams,
    HypergeomParams,
    conjugation_identity_steps,
    generate_all,
    group_classes,
    heun_equation,
    homography_image,
    homomorphism_check,
    local_solution,
    pair_partner,
    pairing_stats,
    twisted_composition_check,
)
from heun192.fuchsian.solutions import random_pairs
from heun192.numerics import distinct_a_values, mutate_q, safe_draws, verify_all, verify_class
from heun192.projective import orbit_n4, orbit_n5

import test_exactalg
import test_fuchsian


def judge(criterion, description, body, limit=None):
    """Run ``body`` (raising AssertionError on failure), record and re-raise."""
    t0 = time.perf_counter()
    err = None
    try:
        detail = body() or ""
    except AssertionError as exc:
        err, detail = exc, f"assertion failed: {exc}"
    elapsed = time.perf_counter() - t0
    timing = f"{elapsed:.2f}s"
    if limit is not None:
        timing += f" / limit {limit:g}s"
        if err is None and elapsed >= limit:
            err = AssertionError(f"took {elapsed:.2f}s, limit {limit}s")
            detail = str(err)
    record(criterion, description, err is None, "; ".join(x for x in (detail, timing) if x))
    if err is not None:
        raise err


def test_criterion_1_kummer_table():
    def body():
        HG = lambda s: parse(s, HYPERGEOMETRIC)
        table = generate_all(HypergeomParams.symbolic())
        assert len(table) == 24
        by_g = {s.g: s for s in table}
        for k, (g, pref, params, arg) in enumerate(KUMMER_24):
            s = by_g[parse_cycles(g, KUMMER_POINTS)]
            assert s.cls == KUMMER_CLASSES[k // 4], g
            for d in ("0", "1"):
                assert s.prefactor[d] == (HG(pref[d]) if d in pref else 0), (g, d)
            assert s.params == HypergeomParams(*(HG(v) for v in params)), g
            assert s.argument.to_expr(HYPERGEOMETRIC) == HG(arg), g
        return "24/24 rows"

    judge(1, "Kummer table matches the transcription", body, limit=1.0)


def test_criterion_2_quoted_heun_formulas():
    def body():
        H = lambda s: parse(s, HEUN)
        for name, (g, params, pref, arg) in HEUN_QUOTED.items():
            s = local_solution(parse_cycles(g, HEUN_POINTS), extend=True)
            assert s.params == HeunParams(*(H(v) for v in params)), name
            for d in ("0", "1", "a"):
                assert s.prefactor[d] == (H(pref[d]) if d in pref else 0), (name, d)
            assert s.argument.to_expr(HEUN) == H(arg), name
        eq = heun_equation()
        r0, r1, ra = eq.rho["0"], eq.rho["1"], eq.rho["a"]
        ri, rh = eq.rho_inf
        a = eq.loc["a"]
        # (rho0, rho1, rho_inf pair, a) after each of the three steps
        forms = [
            (rh - ri, r1, (ri, r0 + ri), 1 / a),
            (rh - ri, -r1, (r0 + r1 + ri, r1 + ri), 1 / a),
            (-r0, -r1, (r0 + r1 + ri, r0 + r1 + rh), a),
        ]
        steps = conjugation_identity_steps()
        for t, (f0, f1, finf, fa) in zip(steps[:3], forms):
            e = t.equation
            assert (e.rho["0"], e.rho["1"], e.rho["a"], e.rho_inf, e.loc["a"]) == (f0, f1, ra, finf, fa)
        assert steps[2].equation.same_data(steps[3].equation)
        return f"{len(HEUN_QUOTED)} transformations, 3 conjugation steps"

    judge(2, "quoted Heun transformations reproduced exactly", body, limit=5.0)


def test_criterion_3_cross_agreement():
    report = None

    def body():
        nonlocal report
        report = verify_all(n=4, trials=20, seed=0, tol=1e-8)
        assert len(report.checks) == 160
        assert report.passed, report.summary()
        worst = max(c.max_deviation for c in report.checks)
        return f"160/160 class checks, worst deviation {worst:.1e}"

    judge(3, "cross-agreement driver, 8 classes x 20 draws", body, limit=120.0)


def test_criterion_4_counting(heun_table):
    def body():
        assert len(enumerate_group("D", HEUN_POINTS)) == 192
        classes = group_classes(heun_table)
        assert len(classes) == 8 and all(len(v) == 24 for v in classes.values())
        assert len({s.params.a for s in heun_table}) == 6
        counts = [len(distinct_a_values(heun_table, a)) for a in (2.3, -1, 0.5 + 1j * 3**0.5 / 2)]
        assert counts == [6, 3, 2], counts
        return "192 = 8 x 24; distinct a' 6/3/2"

    judge(4, "group order, class sizes and distinct a'", body)


def test_criterion_5_group_theory(heun_table):
    def body():
        D3 = enumerate_group("D", HL_POINTS)
        L = lambda s: parse_cycles(s, HL_POINTS)
        for g, p in [
            ("[1+][a+][inf+]", "()"),
            ("[1+ inf+][a+]", "(12)"),
            ("[1-][a+][inf-]", "(12)(34)"),
            ("[1- inf+][a-]", "(1423)"),
            ("[1+ a+][inf+]", "(14)"),
        ]:
            assert d3_to_s4(L(g)) == S4Perm.parse(p), g
        assert len({d3_to_s4(g) for g in D3}) == 24
        for g, h in itertools.product(D3, D3):
            assert d3_to_s4(compose(g, h)) == d3_to_s4(g) * d3_to_s4(h)
        assert element_order(L("[1+ a- inf+]")) == 6
        assert max(element_order(g) for g in D3) == 4
        assert twisted_composition_check()
        flip, t = L("[inf-]"), S4Perm.parse("(14)(23)")
        for g in D3:
            c = conjugate(g, flip)
            assert is_even(c) and d3_to_s4(c) == t.inverse() * d3_to_s4(g) * t
        return "576 products checked"

    judge(5, "S4 isomorphism, element orders, twisted composition", body)


def test_criterion_6_orbits():
    def n4():
        sizes = [len(orbit_n4(a)) for a in (3, -1, 0.5 + 1j * 3**0.5 / 2)]
        assert sizes == [6, 3, 2], sizes
        return sizes

    def n5():
        s5, s3 = 5**0.5, 3**0.5
        sizes = [
            len(orbit_n5(2.3, -0.7)),
            len(orbit_n5((1 + 1j) / 2, (1 - 1j) / 2)),
            len(orbit_n5((1 + 1j * s3) / 2, (1 - 1j * s3) / 2)),
            len(orbit_n5((3 + s5) / 2, (-1 - s5) / 2)),
        ]
        line = len(orbit_n5(0.25, 0.75))
        assert sizes == [120, 30, 20, 12], sizes
        assert line <= 60, line
        return sizes + [line]

    def body():
        a = n4()
        t0 = time.perf_counter()
        b = n5()
        dt = time.perf_counter() - t0
        assert dt < 10.0, f"n=5 orbits took {dt:.2f}s"
        return f"n=4 sizes {a}; n=5 sizes {b[:4]}, a+b=1 sample {b[4]}; n=5 in {dt:.2f}s"

    judge(6, "orbit sizes for n=4 and n=5", body)


def test_criterion_7_pairing(heun_table):
    def body():
        stats = pairing_stats(heun_table)
        assert stats == {"fixed_points": 0, "pairs": 96, "involution": 1}, stats
        for s in heun_table:
            t = pair_partner(s, heun_table)
            img = homography_image(s)
            assert t.g != s.g
            assert pair_partner(t, heun_table).g == s.g
            assert img["params"] == t.params and img["argument"] == t.argument
            assert all(img["prefactor"][d] == t.prefactor[d] for d in ("0", "1", "a"))
        return "96 pairs, no fixed points"

    judge(7, "a-homography pairing is a fixed-point-free involution", body)


def test_criterion_8_properties(heun_table):
    def body():
        many = settings(max_examples=1000, deadline=None, suppress_health_check=list(HealthCheck))
        rx = test_exactalg.ratexprs

        @many
        @given(rx(), rx(), rx())
        def field_axioms(u, v, w):
            assert (u + v) + w == u + (v + w) and (u * v) * w == u * (v * w)
            assert u * (v + w) == u * v + u * w
            assert u + v == v + u and u * v == v * u and u - u == 0
            if not u.is_zero():
                assert u * u.inverse() == 1

        @many
        @given(rx())
        def idempotent(e):
            assert e.normalize().normalize() == e.normalize() == e
            assert parse(format_expr(e), HEUN) == e

        field_axioms()
        idempotent()
        test_fuchsian.test_fuchs_and_epsilon_for_all(heun_table)
        test_fuchsian.test_exponent_linearity(heun_table)
        eq = heun_equation()
        pairs = random_pairs(50, seed=11)
        for g, h in pairs:
            assert homomorphism_check(g, h, eq), (str(g), str(h))
        return "1000 field draws, 1000 canonical draws, 192 Fuchs/linearity, 50 homomorphism pairs"

    judge(8, "algebraic property suites", body)


def test_criterion_9_mutation_sensitivity(heun_table):
    def body():
        classes = group_classes(heun_table)
        draw = safe_draws(1, 0, heun_table, 4)[0]
        missed = []
        smallest = float("inf")
        for cls, sols in classes.items():
            base = verify_class(cls, sols, draw, 1e-8)
            assert base.passed, cls
            for i in range(len(sols)):
                bad = list(sols)
                bad[i] = mutate_q(bad[i])
                r = verify_class(cls, bad, draw, 1e-8)
                smallest = min(smallest, r.max_deviation)
                if r.passed:
                    missed.append(str(sols[i].g))
        assert not missed, missed
        return f"192/192 mutations detected, smallest deviation {smallest:.1e}"

    judge(9, "every single q' mutation trips its class check", body)
