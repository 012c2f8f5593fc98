"""Batch series kernels for Hl and 2F1.

Two interchangeable implementations: numba-compiled loops and a vectorized
numpy path.  Set ``HEUN192_NO_NUMBA=1`` to force numpy; numpy is also used
when numba is not installed.

All kernels sum terms t_k = c_k z^k directly and stop once
|t_k| < rtol*|sum| holds for three consecutive k, or at ``cap`` terms.
Returned arrays: value, terms used, truncation estimate (largest of the last
three |t_k|), and a converged flag.
"""
import os

import numpy as np

_FORCE_NUMPY = os.environ.get("HEUN192_NO_NUMBA", "").strip() not in ("", "0")

try:
    if _FORCE_NUMPY:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag
    HAVE_NUMBA = False


def _heun_numpy(a, q, alpha, beta, gamma, delta, z, rtol, cap):
    eps = alpha + beta - gamma - delta + 1
    n = z.shape[0]
    prev = np.zeros(n, dtype=np.complex128)
    cur = np.ones(n, dtype=np.complex128)
    total = np.ones(n, dtype=np.complex128)
    small = np.zeros(n, dtype=np.int64)
    used = np.ones(n, dtype=np.int64)
    est = np.zeros(n, dtype=np.float64)
    last = np.zeros((3, n), dtype=np.float64)
    active = np.ones(n, dtype=bool)
    k = 0
    while k < cap - 1 and active.any():
        kk = float(k)
        num = (kk * ((kk + gamma + delta - 1) * a + (kk + gamma + eps - 1)) + q) * cur * z
        num = num - (kk + alpha - 1) * (kk + beta - 1) * prev * z * z
        nxt = num / ((kk + 1) * (kk + gamma) * a)
        nxt = np.where(active, nxt, 0)
        prev = np.where(active, cur, prev)
        cur = np.where(active, nxt, cur)
        total = total + nxt
        mag = np.abs(nxt)
        last[k % 3] = np.where(active, mag, last[k % 3])
        tiny = mag < rtol * np.abs(total)
        small = np.where(active, np.where(tiny, small + 1, 0), small)
        used = np.where(active, used + 1, used)
        k += 1
        done = active & (small >= 3)
        active = active & ~done
    est = last.max(axis=0)
    return total, used, est, ~active


def _gauss_numpy(a, b, c, z, rtol, cap):
    n = z.shape[0]
    cur = np.ones(n, dtype=np.complex128)
    total = np.ones(n, dtype=np.complex128)
    small = np.zeros(n, dtype=np.int64)
    used = np.ones(n, dtype=np.int64)
    last = np.zeros((3, n), dtype=np.float64)
    active = np.ones(n, dtype=bool)
    k = 0
    while k < cap - 1 and active.any():
        kk = float(k)
        nxt = cur * (kk + a) * (kk + b) / ((kk + 1) * (kk + c)) * z
        nxt = np.where(active, nxt, 0)
        cur = np.where(active, nxt, cur)
        total = total + nxt
        mag = np.abs(nxt)
        last[k % 3] = np.where(active, mag, last[k % 3])
        tiny = mag < rtol * np.abs(total)
        small = np.where(active, np.where(tiny, small + 1, 0), small)
        used = np.where(active, used + 1, used)
        k += 1
        active = active & ~(small >= 3)
    return total, used, last.max(axis=0), ~active


def _heun_loop(a, q, alpha, beta, gamma, delta, z, rtol, cap):
    n = z.shape[0]
    total = np.empty(n, dtype=np.complex128)
    used = np.empty(n, dtype=np.int64)
    est = np.empty(n, dtype=np.float64)
    ok = np.empty(n, dtype=np.bool_)
    for i in range(n):
        A, Q, al, be, ga, de, zi = a[i], q[i], alpha[i], beta[i], gamma[i], delta[i], z[i]
        ep = al + be - ga - de + 1
        prev = 0j
        cur = 1 + 0j
        s = 1 + 0j
        small = 0
        m0 = 0.0
        m1 = 0.0
        m2 = 0.0
        k = 0
        conv = False
        while k < cap - 1:
            kk = float(k)
            num = (kk * ((kk + ga + de - 1) * A + (kk + ga + ep - 1)) + Q) * cur * zi
            num -= (kk + al - 1) * (kk + be - 1) * prev * zi * zi
            nxt = num / ((kk + 1) * (kk + ga) * A)
            prev = cur
            cur = nxt
            s += nxt
            mag = abs(nxt)
            m2 = m1
            m1 = m0
            m0 = mag
            k += 1
            if mag < rtol * abs(s):
                small += 1
                if small >= 3:
                    conv = True
                    break
            else:
                small = 0
        total[i] = s
        used[i] = k + 1
        est[i] = max(m0, max(m1, m2))
        ok[i] = conv
    return total, used, est, ok


def _gauss_loop(a, b, c, z, rtol, cap):
    n = z.shape[0]
    total = np.empty(n, dtype=np.complex128)
    used = np.empty(n, dtype=np.int64)
    est = np.empty(n, dtype=np.float64)
    ok = np.empty(n, dtype=np.bool_)
    for i in range(n):
        A, B, C, zi = a[i], b[i], c[i], z[i]
        cur = 1 + 0j
        s = 1 + 0j
        small = 0
        m0 = 0.0
        m1 = 0.0
        m2 = 0.0
        k = 0
        conv = False
        while k < cap - 1:
            kk = float(k)
            cur = cur * (kk + A) * (kk + B) / ((kk + 1) * (kk + C)) * zi
            s += cur
            mag = abs(cur)
            m2 = m1
            m1 = m0
            m0 = mag
            k += 1
            if mag < rtol * abs(s):
                small += 1
                if small >= 3:
                    conv = True
                    break
            else:
                small = 0
        total[i] = s
        used[i] = k + 1
        est[i] = max(m0, max(m1, m2))
        ok[i] = conv
    return total, used, est, ok


if HAVE_NUMBA:
    heun_batch_numba = njit(cache=True)(_heun_loop)
    gauss_batch_numba = njit(cache=True)(_gauss_loop)
else:  # pragma: no cover
    heun_batch_numba = None
    gauss_batch_numba = None


def _c(v, n):
    return np.broadcast_to(np.asarray(v, dtype=np.complex128), (n,)).copy()


def heun_batch(a, q, alpha, beta, gamma, delta, z, rtol=1e-18, cap=20000, backend=None):
    z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    n = z.shape[0]
    args = [_c(v, n) for v in (a, q, alpha, beta, gamma, delta)] + [z]
    backend = backend or default_backend()
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but unavailable")
        return heun_batch_numba(*args, float(rtol), int(cap))
    return _heun_numpy(*args, float(rtol), int(cap))


def gauss_batch(a, b, c, z, rtol=1e-18, cap=20000, backend=None):
    z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    n = z.shape[0]
    args = [_c(v, n) for v in (a, b, c)] + [z]
    backend = backend or default_backend()
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but unavailable")
        return gauss_batch_numba(*args, float(rtol), int(cap))
    return _gauss_numpy(*args, float(rtol), int(cap))


def default_backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"
