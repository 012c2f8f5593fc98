"""Numeric evaluation of local solutions and the cross-agreement driver.

Within a class every expression is a constant multiple of the same
Frobenius solution, so v_i(x)/v_j(x) must not depend on x.  The driver
samples two points near the class's singular point and compares ratios.
"""
from __future__ import annotations

import functools
import json
import warnings
from dataclasses import asdict, dataclass, field, replace
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..fuchsian import (
    HeunParams,
    HypergeomParams,
    LocalSolution,
    class_order,
    generate_all,
    group_classes,
)
from ..projective import dedup
from . import _kernels
from .series import (
    NoConvergence,
    check_gauss_domain,
    check_heun_domain,
    gauss_2f1_series,
    heun_series,
)


class BranchHazard(UserWarning):
    """A prefactor base is a negative real number at the sample point."""


class SampleInfeasible(RuntimeError):
    pass


HEUN_NAMES = ("a", "q", "alpha", "beta", "gamma", "delta")
HYPER_NAMES = ("a", "b", "c")


def _point(s: LocalSolution, values: Dict[str, complex], x: complex) -> Dict[str, complex]:
    pt = dict(values)
    pt["x"] = x
    return pt


def transformed_argument(s: LocalSolution, values: Dict[str, complex], x: complex) -> complex:
    return complex(s.argument.to_expr(s.transform.equation.registry).eval(_point(s, values, x)))


def convergence_radius(s: LocalSolution, values: Dict[str, complex]) -> float:
    if s.n == 4:
        return min(1.0, abs(complex(s.params.a.eval(values))))
    return 1.0


def prefactor_value(s: LocalSolution, values: Dict[str, complex], x: complex, warn: bool = True) -> complex:
    pt = _point(s, values, x)
    out = 1 + 0j
    bases = s.bases()
    for e, nu in s.prefactor.items():
        if nu.is_zero():
            continue
        b = complex(bases[e].eval(pt))
        if warn and b.real < 0 and b.imag == 0:
            warnings.warn(f"prefactor base for {e} is negative real ({b.real:.3g}) at x={x}", BranchHazard, stacklevel=3)
        out *= b ** complex(nu.eval(values))
    return out


def evaluate_solution(s: LocalSolution, values: Dict[str, complex], x: complex, backend=None) -> complex:
    """A(x) * F(params'; P x) with principal powers; F is Hl (n=4) or 2F1 (n=3)."""
    z = transformed_argument(s, values, x)
    p = s.params.evaluate(values)
    if s.n == 4:
        f = heun_series(p, z, backend=backend).value
    else:
        f = gauss_2f1_series(p, z, backend=backend).value
    return prefactor_value(s, values, x) * f


def evaluate_many(solutions: Sequence[LocalSolution], values: Dict[str, complex], xs: Sequence[complex], backend=None):
    """Matrix v[i, k] of solution i at sample k, batched through one kernel call."""
    m, K = len(solutions), len(xs)
    pre = np.empty((m, K), dtype=np.complex128)
    zs = np.empty((m, K), dtype=np.complex128)
    cols = {}
    n = solutions[0].n
    names = HEUN_NAMES if n == 4 else HYPER_NAMES
    for name in names:
        cols[name] = np.empty((m, K), dtype=np.complex128)
    for i, s in enumerate(solutions):
        p = s.params.evaluate(values).as_dict()
        for k, x in enumerate(xs):
            zs[i, k] = transformed_argument(s, values, x)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", BranchHazard)
                pre[i, k] = prefactor_value(s, values, x, warn=False)
            for name in names:
                cols[name][i, k] = p[name]
            if n == 4:
                check_heun_domain(p["a"], p["gamma"], zs[i, k])
            else:
                check_gauss_domain(p["c"], zs[i, k])
    flat = [cols[name].ravel() for name in names]
    if n == 4:
        val, used, est, ok = _kernels.heun_batch(*flat, zs.ravel(), backend=backend)
    else:
        val, used, est, ok = _kernels.gauss_batch(*flat, zs.ravel(), backend=backend)
    if not ok.all():
        raise NoConvergence("series did not converge for some sample")
    return pre * val.reshape(m, K)


# -- sampling ------------------------------------------------------------------


def _class_location(point: str, values: Dict[str, complex]) -> complex:
    return {"0": 0.0, "1": 1.0}.get(point, values.get("a") if point == "a" else None)


def sample_points(cls, solutions: Sequence[LocalSolution], values: Dict[str, complex], r: float = 1e-3, shrink: float = 0.8, max_iter: int = 60) -> Tuple[complex, complex]:
    """Two points near the class point with every transformed argument well
    inside its disk: d + r*dir, d + 2r*dir (dir into (0, 1)), or 50m, 100m
    for infinity."""
    point = cls[0]
    radii = [convergence_radius(s, values) for s in solutions]
    for _ in range(max_iter):
        if point == "inf":
            xs = (complex(50.0 / r * 1e-3), complex(100.0 / r * 1e-3))
        else:
            d = complex(_class_location(point, values))
            direction = 1.0 if point == "0" else -1.0
            xs = (d + r * direction, d + 2 * r * direction)
        ok = True
        for s, rad in zip(solutions, radii):
            for x in xs:
                try:
                    z = transformed_argument(s, values, x)
                except ArithmeticError:
                    ok = False
                    break
                if not abs(z) <= shrink * rad:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return xs
        r /= 2
    raise SampleInfeasible(f"no feasible sample points for class {cls} at {values}")


# -- parameter draws -----------------------------------------------------------


def _near_int(v: complex, tol: float, nonpositive: bool = False) -> bool:
    v = complex(v)
    k = round(v.real)
    if nonpositive and k > 0:
        return False
    return abs(v - k) < tol


def draw_is_safe(values: Dict[str, complex], solutions: Sequence[LocalSolution], tol: float = 1e-3) -> bool:
    """Reject draws near logarithmic or degenerate cases across all transformed
    parameter sets."""
    for s in solutions:
        eq = s.transform.equation
        for d in eq.finite:
            if _near_int(eq.rho[d].eval(values), tol):
                return False
        if _near_int(eq.rho_inf[0].eval(values) - eq.rho_inf[1].eval(values), tol):
            return False
        lead = s.params.gamma if s.n == 4 else s.params.c
        if _near_int(lead.eval(values), tol, nonpositive=True):
            return False
    return True


def draw_params(rng: np.random.Generator, n: int) -> Dict[str, float]:
    if n == 4:
        return {
            "a": float(rng.uniform(1.5, 3.0)),
            "q": float(rng.uniform(-1.0, 1.0)),
            "alpha": float(rng.uniform(0.1, 0.9)),
            "beta": float(rng.uniform(0.1, 0.9)),
            "gamma": float(rng.uniform(0.1, 0.9)),
            "delta": float(rng.uniform(0.1, 0.9)),
        }
    return {name: float(rng.uniform(0.1, 0.9)) for name in HYPER_NAMES}


def safe_draws(trials: int, seed: int, solutions: Sequence[LocalSolution], n: int, max_tries: int = 10000) -> List[Dict[str, float]]:
    rng = np.random.default_rng(seed)
    out = []
    tries = 0
    while len(out) < trials:
        tries += 1
        if tries > max_tries:
            raise SampleInfeasible("could not draw safe parameters")
        v = draw_params(rng, n)
        if draw_is_safe(v, solutions):
            out.append(v)
    return out


# -- reports -------------------------------------------------------------------


@dataclass
class ClassCheck:
    cls: Tuple[str, str]
    trial: int
    draw: Dict[str, float]
    samples: Tuple[complex, complex]
    indices: List[str]
    values: List[Tuple[complex, complex]]
    max_deviation: float
    passed: bool
    error: str = ""

    def to_dict(self) -> dict:
        d = asdict(self)
        d["cls"] = {"point": self.cls[0], "branch": self.cls[1]}
        d["samples"] = [[x.real, x.imag] for x in self.samples]
        d["values"] = [[[v.real, v.imag] for v in pair] for pair in self.values]
        return d


@dataclass
class VerificationReport:
    n: int
    trials: int
    seed: int
    tol: float
    checks: List[ClassCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[ClassCheck]:
        return [c for c in self.checks if not c.passed]

    def summary(self) -> str:
        lines = [f"n={self.n} trials={self.trials} seed={self.seed} tol={self.tol:g}"]
        per = {}
        for c in self.checks:
            k = f"{c.cls[0]}/{c.cls[1]}"
            ok, worst = per.get(k, (0, 0.0))
            per[k] = (ok + int(c.passed), max(worst, c.max_deviation))
        for k, (ok, worst) in per.items():
            lines.append(f"  class {k:10s} passed {ok}/{self.trials}  max deviation {worst:.3e}")
        lines.append(f"{'PASS' if self.passed else 'FAIL'}: {sum(c.passed for c in self.checks)}/{len(self.checks)} class checks")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "tol": self.tol,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def verify_class(cls, solutions: Sequence[LocalSolution], values: Dict[str, float], tol: float, trial: int = 0, pairwise: bool = True, backend=None) -> ClassCheck:
    """Ratio-constancy check for the expressions of one class."""
    xs = sample_points(cls, solutions, values)
    idx = [str(s.g) for s in solutions]
    try:
        v = evaluate_many(solutions, values, xs, backend=backend)
    except (ArithmeticError, ValueError) as exc:
        return ClassCheck(tuple(cls), trial, dict(values), xs, idx, [], float("inf"), False, str(exc))
    m = len(solutions)
    worst = 0.0
    finite = bool(np.all(np.isfinite(v)) and np.all(v != 0))
    refs = range(m) if pairwise else range(1)
    if finite:
        for j in refs:
            r1 = v[:, 0] / v[j, 0]
            r2 = v[:, 1] / v[j, 1]
            dev = np.abs(r1 - r2) / np.abs(r1)
            worst = max(worst, float(dev.max()))
    else:
        worst = float("inf")
    vals = [(complex(v[i, 0]), complex(v[i, 1])) for i in range(m)]
    passed = finite and worst <= tol
    return ClassCheck(tuple(cls), trial, dict(values), xs, idx, vals, worst, passed)


@functools.lru_cache(maxsize=None)
def solution_table(n: int) -> Tuple[LocalSolution, ...]:
    if n == 4:
        return tuple(generate_all(HeunParams.symbolic()))
    if n == 3:
        return tuple(generate_all(HypergeomParams.symbolic()))
    raise ValueError("n must be 3 or 4")


def verify_all(trials: int = 1, seed: int = 0, tol: float = 1e-8, n: int = 4, solutions: Sequence[LocalSolution] | None = None, backend=None) -> VerificationReport:
    """All 2n classes times ``trials`` seeded parameter draws."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    sols = list(solutions) if solutions is not None else list(solution_table(n))
    classes = group_classes(sols)
    draws = safe_draws(trials, seed, sols, n)
    report = VerificationReport(n, trials, seed, tol)
    order = [c for c in class_order() if c in classes]
    for t, values in enumerate(draws):
        for cls in order:
            report.checks.append(verify_class(cls, classes[cls], values, tol, trial=t, backend=backend))
    return report


def mutate_q(s: LocalSolution, delta=1) -> LocalSolution:
    """Copy of ``s`` with its transformed q' (or, for n=3, c') shifted."""
    if s.n == 4:
        params = replace(s.params, q=s.params.q + delta)
    else:
        params = replace(s.params, c=s.params.c + delta)
    return replace(s, params=params)


def pointwise_check(solutions: Sequence[LocalSolution], values: Dict[str, float], x: float, tol: float = 1e-10) -> float:
    """Max relative deviation from F(x) over the (0, first) class; with the
    normalized bases the expressions are equal, not merely proportional."""
    ref = None
    worst = 0.0
    for s in solutions:
        if s.cls != ("0", "first"):
            continue
        v = evaluate_solution(s, values, x)
        if ref is None:
            if s.n == 4:
                ref = heun_series(HeunParams(*(values[k] for k in HEUN_NAMES)), x).value
            else:
                ref = gauss_2f1_series(HypergeomParams(*(values[k] for k in HYPER_NAMES)), x).value
        worst = max(worst, abs(v - ref) / abs(ref))
    return worst


def distinct_a_values(solutions: Sequence[LocalSolution], a: complex, tol: float = 1e-9) -> List[complex]:
    """The distinct a' across the table at a numeric a."""
    vals = [complex(s.params.a.eval({"a": a})) for s in solutions]
    return dedup(vals, tol)
