"""Ramanujan tau and the normalized Hecke eigenvalues of the discriminant form."""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

import numpy as np

from .. import kernels
from .arith import divisor_sums, is_prime


@dataclass(frozen=True)
class TauTable:
    n_max: int
    tau: tuple[int, ...]  # tau[n] for 0 <= n <= n_max; tau[0] = 0
    lam: np.ndarray  # float64, lam[n] = tau(n) / n^(11/2); lam[0] = 0

    def covers(self, n: int) -> bool:
        return n <= self.n_max

    def require(self, n: float) -> None:
        if n > self.n_max:
            raise ValueError(f"tau table covers n <= {self.n_max}, need {n}")


def _crt_primes(n_max: int) -> list[int]:
    # Keep every int64 dot product in the recurrence below 2**62.
    p = math.isqrt(2**62 // (n_max + 1))
    if p <= n_max:
        raise ValueError(f"n_max={n_max} too large for 64-bit modular recurrence")
    # |tau(n)| <= d(n) n^(11/2) <= 2 n^6; one extra prime is a consistency check.
    bits = math.log2(4.0 * float(max(n_max, 2)) ** 6)
    primes = []
    prod = 1
    while prod.bit_length() <= bits + 1:
        while not is_prime(p):
            p -= 1
        primes.append(p)
        prod *= p
        p -= 1
    while not is_prime(p):
        p -= 1
    primes.append(p)
    return primes


def _crt(residues: list[np.ndarray], primes: list[int]) -> list[int]:
    modulus = math.prod(primes)
    parts = []
    for p in primes:
        m = modulus // p
        parts.append(m * pow(m, -1, p))
    out = []
    for n in range(len(residues[0])):
        x = sum(int(r[n]) * c for r, c in zip(residues, parts)) % modulus
        out.append(x - modulus if x > modulus // 2 else x)
    return out


def tau_table(n_max: int) -> TauTable:
    """tau(1..n_max) via the logarithmic-derivative recurrence of q prod (1 - q^n)^24.

    The recurrence runs modulo several primes in a compiled kernel and the
    integers are recovered by CRT; a spare prime confirms the reconstruction.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    sigma = divisor_sums(n_max)
    primes = _crt_primes(n_max)
    residues = []
    for p in primes:
        inv = np.zeros(n_max + 1, dtype=np.int64)
        inv[1:] = [pow(k, -1, p) for k in range(1, n_max + 1)]
        residues.append(kernels.tau_recurrence_mod(sigma % p, inv, p))
    tau = _crt(residues, primes)
    if _crt(residues[:-1], primes[:-1]) != tau:
        raise ArithmeticError("CRT reconstruction of tau is not stable; increase the prime count")
    lam = np.zeros(n_max + 1)
    for n in range(1, n_max + 1):
        lam[n] = float(tau[n]) / (n ** 5 * math.sqrt(n))
    return TauTable(n_max, tuple(tau), lam)


def tau_naive_product(n_max: int) -> list[int]:
    """Independent oracle: expand q * prod_{n <= n_max} (1 - q^n)^24 with exact integers."""
    series = [0] * (n_max + 1)
    series[0] = 1  # coefficients of prod (1 - q^n)^24, shifted by one power of q
    for n in range(1, n_max):
        binom = [(j * n, (-1) ** j * comb(24, j)) for j in range(1, 25) if j * n < n_max]
        new = series[:]
        for i, c in enumerate(series):
            if c:
                for shift, b in binom:
                    if i + shift >= n_max:
                        break
                    new[i + shift] += c * b
        series = new
    return [0] + series[:n_max]
