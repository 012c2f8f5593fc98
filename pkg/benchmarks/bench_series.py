"""Compare the numba and numpy batch kernels on the same inputs.

    python3 benchmarks/bench_series.py [--sizes 64 1024 16384] [--repeat 5]

Points are drawn inside radius 0.8 of the origin (the regime the verifier
uses), so every series converges well before the term cap.
"""
import argparse
import time

import numpy as np

from heun192.numerics import _kernels


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def points(n, rng):
    return 0.8 * np.sqrt(rng.uniform(0, 1, n)) * np.exp(2j * np.pi * rng.uniform(0, 1, n))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 1024, 16384])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    if not _kernels.HAVE_NUMBA:
        print("numba unavailable (or HEUN192_NO_NUMBA set); timing numpy only")
    rng = np.random.default_rng(0)
    kernels = {
        "heun": (_kernels.heun_batch, (2.3, 0.37, 0.21, 0.56, 0.43, 0.68)),
        "2f1": (_kernels.gauss_batch, (0.3, 0.7, 1.4)),
    }
    # compile outside the timed region
    for f, params in kernels.values():
        for b in backends:
            f(*params, points(4, rng), backend=b)

    print(f"{'kernel':6s} {'n':>7s} " + " ".join(f"{b:>12s}" for b in backends) + ("  speedup   max|diff|" if len(backends) == 2 else ""))
    for name, (f, params) in kernels.items():
        for n in args.sizes:
            z = points(n, rng)
            times, vals = [], []
            for b in backends:
                times.append(best_of(lambda: f(*params, z, backend=b), args.repeat))
                vals.append(f(*params, z, backend=b)[0])
            line = f"{name:6s} {n:7d} " + " ".join(f"{t * 1e3:10.2f}ms" for t in times)
            if len(backends) == 2:
                diff = float(np.max(np.abs(vals[0] - vals[1]) / np.abs(vals[1])))
                line += f"  {times[0] / times[1]:7.1f}x  {diff:.1e}"
            print(line)


if __name__ == "__main__":
    main()
