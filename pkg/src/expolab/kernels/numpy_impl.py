import numpy as np

TWO_PI = 2.0 * np.pi


def tau_recurrence_mod(sigma, inv, p):
    """a(n) mod p from (n - 1) a(n) = -24 sum_{k<n} sigma(k) a(n - k), a(1) = 1.

    ``sigma`` and ``inv`` are reduced mod ``p``; ``inv[k]`` is k^-1 mod p.
    Requires n * p**2 < 2**63 so the int64 dot products cannot overflow.
    """
    n_max = len(sigma) - 1
    a = np.zeros(n_max + 1, dtype=np.int64)
    if n_max >= 1:
        a[1] = 1
    for n in range(2, n_max + 1):
        s = int(np.dot(sigma[1:n], a[n - 1:0:-1]) % p)
        a[n] = (-24 * s) % p * inv[n - 1] % p
    return a


def kloosterman_matrix(q, inv):
    """S(m, n; q) for 0 <= m, n < q, as a dense float matrix."""
    a = np.arange(1, q, dtype=np.int64)
    abar = inv[1:q]
    m = np.arange(q, dtype=np.int64)
    ph_m = (np.outer(m, a) % q) * (TWO_PI / q)
    ph_n = (np.outer(m, abar) % q) * (TWO_PI / q)
    return np.cos(ph_m) @ np.cos(ph_n).T - np.sin(ph_m) @ np.sin(ph_n).T


def fourier_grid(ys, xs, wh, chunk=256):
    """sum_j wh[j] * e(-y xs[j]) for every y in ``ys``."""
    ys = np.asarray(ys, dtype=np.float64)
    out = np.empty(len(ys), dtype=np.complex128)
    for lo in range(0, len(ys), chunk):
        yc = ys[lo:lo + chunk]
        ph = np.outer(yc, xs)
        ph -= np.floor(ph)
        out[lo:lo + chunk] = np.exp(-1j * TWO_PI * ph) @ wh
    return out


def twisted_partial_sums(coef, alphas, checkpoints, chunk=32):
    """P[g, c] = sum_{1 <= n <= checkpoints[c]} coef[n] e(n alphas[g])."""
    n_max = int(checkpoints.max())
    n = np.arange(1, n_max + 1, dtype=np.float64)
    c = coef[1:n_max + 1]
    out = np.empty((len(alphas), len(checkpoints)), dtype=np.complex128)
    for lo in range(0, len(alphas), chunk):
        al = np.asarray(alphas[lo:lo + chunk], dtype=np.float64)
        ph = np.outer(al, n)
        ph -= np.floor(ph)
        cums = np.cumsum(np.exp(1j * TWO_PI * ph) * c, axis=1)
        out[lo:lo + chunk] = cums[:, checkpoints - 1]
    return out
