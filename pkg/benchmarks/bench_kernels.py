"""Time the numba and numpy implementation of each kernel on acceptance-sized inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3]

The first numba call per kernel is a warm-up (compilation or cache load) and is
reported separately.
"""

import argparse
import time

import numpy as np

from expolab.kernels import numba_impl, numpy_impl
from expolab.nt.arith import divisor_sums, inverse_table
from expolab.nt.tau import tau_table
from expolab.nt.weight import LEFT, RIGHT, bump_weight, grid_points
from expolab.sums.wilton import PILOT_SCALES, default_alpha_grid


def cases():
    n = 10_000
    p = 16_777_213
    inv = np.zeros(n + 1, dtype=np.int64)
    inv[1:] = [pow(k, -1, p) for k in range(1, n + 1)]
    yield "tau_recurrence_mod (n=1e4)", "tau_recurrence_mod", (divisor_sums(n) % p, inv, p)

    q = 499
    yield "kloosterman_matrix (q=499)", "kloosterman_matrix", (q, inverse_table(q))

    ys = np.arange(-512, 513) * 0.25
    panels = grid_points(float(np.abs(ys).max()))
    h = (RIGHT - LEFT) / panels
    xs = LEFT + h * np.arange(1, panels)
    yield f"fourier_grid ({len(ys)} y x {len(xs)} x)", "fourier_grid", (ys, xs, bump_weight(xs) * h)

    lam = tau_table(PILOT_SCALES[1]).lam
    checkpoints = np.array([2**k for k in range(15)], dtype=np.int64)
    yield "twisted_partial_sums (256 alpha, N=2^14)", "twisted_partial_sums", (lam, default_alpha_grid(), checkpoints)


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'kernel':<42} {'numba warm-up':>14} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for label, name, kargs in cases():
        t0 = time.perf_counter()
        getattr(numba_impl, name)(*kargs)
        warm = time.perf_counter() - t0
        t_nb = best_of(getattr(numba_impl, name), kargs, args.repeat)
        t_np = best_of(getattr(numpy_impl, name), kargs, args.repeat)
        print(f"{label:<42} {warm:>13.3f}s {t_nb:>9.4f}s {t_np:>9.4f}s {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
