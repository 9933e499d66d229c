"""Small exact arithmetic helpers: divisors, sieves, modular inverses."""

from __future__ import annotations

import math

import numpy as np


def divisor_count(n: int) -> int:
    if n < 1:
        raise ValueError("divisor_count needs n >= 1")
    count = 0
    r = math.isqrt(n)
    for d in range(1, r + 1):
        if n % d == 0:
            count += 2
    if r * r == n:
        count -= 1
    return count


def divisor_counts(n_max: int) -> np.ndarray:
    """d(n) for 0 <= n <= n_max (entry 0 is 0)."""
    d = np.zeros(n_max + 1, dtype=np.int64)
    for k in range(1, n_max + 1):
        d[k::k] += 1
    return d


def divisor_sums(n_max: int) -> np.ndarray:
    """sigma_1(n) for 0 <= n <= n_max, by an O(N log N) sieve."""
    s = np.zeros(n_max + 1, dtype=np.int64)
    for k in range(1, n_max + 1):
        s[k::k] += k
    return s


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, math.isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return [int(p) for p in np.flatnonzero(sieve)]


def require_odd_prime(q: int) -> None:
    if q == 2 or not is_prime(q):
        raise ValueError(f"modulus must be an odd prime, got {q}")


def mod_inverse(a: int, q: int) -> int:
    """Inverse of ``a`` modulo the odd prime ``q``, in [1, q - 1]."""
    require_odd_prime(q)
    if a % q == 0:
        raise ValueError(f"{a} is divisible by {q}; no inverse exists")
    return pow(a, -1, q)


def inverse_table(q: int) -> np.ndarray:
    """inv[a] = a^-1 mod q for 1 <= a < q; inv[0] = 0."""
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = pow(a, -1, q)
    return inv
