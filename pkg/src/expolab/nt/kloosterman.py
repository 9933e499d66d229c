from __future__ import annotations

import math

import numpy as np

from .. import kernels
from .arith import inverse_table, require_odd_prime

IMAG_TOL = 1e-9


def kloosterman(m: int, n: int, q: int) -> float:
    """S(m, n; q) by the direct O(q) loop over a mod q, (a, q) = 1."""
    require_odd_prime(q)
    a = np.arange(1, q, dtype=np.int64)
    abar = inverse_table(q)[1:]
    phase = ((m % q) * a + (n % q) * abar) % q
    total = np.exp(2j * np.pi * phase / q).sum()
    # a -> -a conjugates each term, so the sum is real.
    if abs(total.imag) > IMAG_TOL:
        raise ArithmeticError(f"S({m},{n};{q}) has imaginary part {total.imag:.3g}")
    return float(total.real)


def kloosterman_table(q: int) -> np.ndarray:
    """S(m, n; q) for all residues 0 <= m, n < q."""
    require_odd_prime(q)
    return kernels.kloosterman_matrix(q, inverse_table(q))


def weil_ratio(q: int) -> float:
    """max |S(m, n; q)| / (2 sqrt q) over 1 <= m, n <= q - 1."""
    table = kloosterman_table(q)
    return float(np.abs(table[1:, 1:]).max() / (2.0 * math.sqrt(q)))
