"""Scalar series evaluation of Hl and 2F1, plus exact coefficient lists."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from . import _kernels

DEFAULT_RTOL = 1e-18
DEFAULT_CAP = 20000


class OutsideDisk(ValueError):
    pass


class LogarithmicCase(ValueError):
    pass


class NoConvergence(ArithmeticError):
    pass


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms_used: int
    truncation_estimate: float


def _near_nonpositive_integer(v, tol=1e-8) -> bool:
    v = complex(v)
    if abs(v.imag) > tol:
        return False
    k = round(v.real)
    return k <= 0 and abs(v.real - k) <= tol


def _param(p, name):
    return complex(getattr(p, name))


def check_heun_domain(a, gamma, z):
    if a == 0:
        raise ValueError("a must be nonzero")
    if _near_nonpositive_integer(gamma):
        raise LogarithmicCase(f"gamma = {gamma} is (nearly) a nonpositive integer")
    radius = min(1.0, abs(a))
    if abs(z) >= radius:
        raise OutsideDisk(f"|z| = {abs(z):.6g} outside the disk of radius {radius:.6g}")


def check_gauss_domain(c, z):
    if _near_nonpositive_integer(c):
        raise LogarithmicCase(f"c = {c} is (nearly) a nonpositive integer")
    if abs(z) >= 1.0:
        raise OutsideDisk(f"|z| = {abs(z):.6g} outside the unit disk")


def heun_series(p, z, rtol=DEFAULT_RTOL, cap=DEFAULT_CAP, backend=None) -> SeriesResult:
    """Hl(a, q; alpha, beta, gamma, delta; z) for numeric HeunParams ``p``."""
    vals = [_param(p, k) for k in ("a", "q", "alpha", "beta", "gamma", "delta")]
    z = complex(z)
    check_heun_domain(vals[0], vals[4], z)
    if z == 0:
        return SeriesResult(1 + 0j, 1, 0.0)
    v, used, est, ok = _kernels.heun_batch(*vals, np.array([z]), rtol, cap, backend)
    if not ok[0]:
        raise NoConvergence(f"Heun series did not converge within {cap} terms at z={z}")
    return SeriesResult(complex(v[0]), int(used[0]), float(est[0]))


def gauss_2f1_series(p, z, rtol=DEFAULT_RTOL, cap=DEFAULT_CAP, backend=None) -> SeriesResult:
    """2F1(a, b; c; z) for numeric HypergeomParams ``p``."""
    a, b, c = (_param(p, k) for k in ("a", "b", "c"))
    z = complex(z)
    check_gauss_domain(c, z)
    if z == 0:
        return SeriesResult(1 + 0j, 1, 0.0)
    v, used, est, ok = _kernels.gauss_batch(a, b, c, np.array([z]), rtol, cap, backend)
    if not ok[0]:
        raise NoConvergence(f"2F1 series did not converge within {cap} terms at z={z}")
    return SeriesResult(complex(v[0]), int(used[0]), float(est[0]))


def heun_coefficients(a, q, alpha, beta, gamma, delta, kmax: int) -> List:
    """c_0..c_kmax of the Heun series; exact when given Fractions."""
    eps = alpha + beta - gamma - delta + 1
    c = [1, (q / (a * gamma))]
    if kmax == 0:
        return c[:1]
    for k in range(1, kmax):
        t = (k * ((k + gamma + delta - 1) * a + (k + gamma + eps - 1)) + q) * c[k]
        t -= (k + alpha - 1) * (k + beta - 1) * c[k - 1]
        c.append(t / ((k + 1) * (k + gamma) * a))
    return c[: kmax + 1]


def gauss_coefficients(a, b, c, kmax: int) -> List:
    out = [1]
    for k in range(kmax):
        out.append(out[-1] * (k + a) * (k + b) / ((k + 1) * (k + c)))
    return out
