import math

import numpy as np
from numba import njit

TWO_PI = 2.0 * math.pi


@njit(cache=True)
def tau_recurrence_mod(sigma, inv, p):
    n_max = len(sigma) - 1
    a = np.zeros(n_max + 1, dtype=np.int64)
    if n_max >= 1:
        a[1] = 1
    for n in range(2, n_max + 1):
        s = 0
        for k in range(1, n):
            s += sigma[k] * a[n - k]
        a[n] = (-24 * (s % p)) % p * inv[n - 1] % p
    return a


@njit(cache=True)
def kloosterman_matrix(q, inv):
    # S(m, n; q) = S(1, mn; q) when q does not divide m, so one row suffices.
    cos_t = np.empty(q)
    for r in range(q):
        cos_t[r] = math.cos(TWO_PI * r / q)
    row = np.zeros(q)
    for a in range(1, q):
        step = inv[a]
        idx = a
        for k in range(q):
            row[k] += cos_t[idx]
            idx += step
            if idx >= q:
                idx -= q
    out = np.empty((q, q))
    out[0, 0] = q - 1
    for n in range(1, q):
        out[0, n] = -1.0
        out[n, 0] = -1.0
    for m in range(1, q):
        for n in range(1, q):
            out[m, n] = row[(m * n) % q]
    return out


@njit(cache=True)
def fourier_grid(ys, xs, wh):
    out = np.empty(len(ys), dtype=np.complex128)
    for i in range(len(ys)):
        re = 0.0
        im = 0.0
        for j in range(len(xs)):
            ph = ys[i] * xs[j]
            ph -= math.floor(ph)
            re += wh[j] * math.cos(TWO_PI * ph)
            im -= wh[j] * math.sin(TWO_PI * ph)
        out[i] = complex(re, im)
    return out


@njit(cache=True)
def twisted_partial_sums(coef, alphas, checkpoints):
    out = np.empty((len(alphas), len(checkpoints)), dtype=np.complex128)
    n_max = checkpoints.max()
    for g in range(len(alphas)):
        al = alphas[g]
        re = 0.0
        im = 0.0
        c = 0
        for n in range(1, n_max + 1):
            ph = n * al
            ph -= math.floor(ph)
            re += coef[n] * math.cos(TWO_PI * ph)
            im += coef[n] * math.sin(TWO_PI * ph)
            while c < len(checkpoints) and checkpoints[c] == n:
                out[g, c] = complex(re, im)
                c += 1
    return out
