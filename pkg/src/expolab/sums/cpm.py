"""C+-(M, N, N1, N2) directly and after Poisson summation in n2.

Poisson side, with a = N2/q and H(r) = sum_{q !| n1} W1(n1/N1) G(r * n1^-1),
G(s) = sum_m lam(m) W3(m/M) e(+-m s / q):

    C = N2/(q sqrt(NM)) * sum_k W2^(k a) H(k mod q)                   (q !| n1)
      + N2/sqrt(NM) * [sum_{q|n1} W1] [sum_{q|m} lam W3] sum_{q|k} W2^(k a)

The first line comes from summing b mod q, which forces a = -k n1^-1; the
second is the q | n1 piece, where both character sums collapse to q [q | m]
and q [q | k].
"""

from __future__ import annotations

import math

import numpy as np

from ..nt.arith import inverse_table
from ..nt.tau import TauTable
from ..nt.weight import DecayConstants, bump_fourier_grid, bump_weight, stored_decay_constants
from .params import SumParams, SumReport, support


def _require_c(p: SumParams):
    if p.N1 is None:
        raise ValueError("C-sums need N1 and N2")


def c_pm(p: SumParams, table: TauTable) -> SumReport:
    """Direct triple sum, bucketing n1 * n2 by residue mod q."""
    _require_c(p)
    q = p.q
    n1s, n2s, ms = support(p.N1), support(p.N2), support(p.M)
    if not (len(n1s) and len(n2s) and len(ms)):
        return SumReport(0.0, 0, "direct")
    table.require(int(ms[-1]))
    w1 = bump_weight(n1s / p.N1)
    w2 = bump_weight(n2s / p.N2)
    w3 = table.lam[ms] * bump_weight(ms / p.M)
    buckets = [[] for _ in range(q)]
    for n1, a in zip(n1s.tolist(), w1.tolist()):
        res = (n1 * n2s) % q
        for r, v in zip(res.tolist(), (a * w2).tolist()):
            buckets[r].append(v)
    bucket = [math.fsum(b) for b in buckets]
    total = math.fsum(w * bucket[(p.sign * m) % q] for m, w in zip(ms.tolist(), w3.tolist()))
    value = total / math.sqrt(p.N * p.M)
    return SumReport(value, len(n1s) * len(n2s) + len(ms), "direct")


class _PoissonParts:
    """Everything in the dual sum that does not depend on the k-range."""

    def __init__(self, p: SumParams, table: TauTable):
        _require_c(p)
        q = p.q
        self.p = p
        n1s, ms = support(p.N1), support(p.M)
        if len(ms):
            table.require(int(ms[-1]))
        w1 = bump_weight(n1s / p.N1) if len(n1s) else np.zeros(0)
        w3 = table.lam[ms] * bump_weight(ms / p.M) if len(ms) else np.zeros(0)
        inv = inverse_table(q)

        g = np.empty(q, dtype=np.complex128)
        for s in range(q):
            ph = 2 * np.pi * ((p.sign * ms * s) % q) / q
            g[s] = complex(math.fsum(w3 * np.cos(ph)), math.fsum(w3 * np.sin(ph)))
        coprime = (n1s % q) != 0
        self.h = np.empty(q, dtype=np.complex128)
        for r in range(q):
            idx = (r * inv[n1s[coprime] % q]) % q
            vals = w1[coprime] * g[idx]
            self.h[r] = complex(math.fsum(vals.real), math.fsum(vals.imag))

        self.deg_n1 = math.fsum(w1[~coprime])
        self.deg_m = math.fsum(w3[ms % q == 0])
        self.smooth_lambda_sum = math.fsum(w3)
        self.root = math.sqrt(p.N * p.M)
        self.a = p.N2 / q
        self.terms = len(n1s) * q + len(ms) * q

    def tail_bound(self, k_cut: int, decay: DecayConstants) -> float:
        """Upper bound for the dropped |k| > k_cut terms from |W2^(y)| <= C4 / (1 + |y|)^4."""
        p, a = self.p, self.a
        # sum_{k > K} (1 + k a)^-4 <= int_K^inf (1 + x a)^-4 dx
        tail = 2 * decay.c4 / (3 * a * (1 + k_cut * a) ** 3)
        bound = p.N2 / (p.q * self.root) * float(np.abs(self.h).max()) * tail
        if self.deg_n1 and self.deg_m:
            j = k_cut // p.q
            deg_tail = 2 * decay.c4 / (3 * p.N2 * (1 + j * p.N2) ** 3)
            bound += p.N2 / self.root * abs(self.deg_n1 * self.deg_m) * deg_tail
        return bound


def kcut_for_tail(p: SumParams, table: TauTable, target: float = 1e-8,
                  decay: DecayConstants | None = None) -> int:
    """Smallest power-of-two k-cut whose tail bound is below ``target``."""
    decay = decay or stored_decay_constants()
    parts = _PoissonParts(p, table)
    k = 1
    while parts.tail_bound(k, decay) >= target:
        k *= 2
    return k


def c_pm_poisson(p: SumParams, table: TauTable, k_cut: int | None = None, tol: float = 1e-8,
                 decay: DecayConstants | None = None) -> SumReport:
    """Dual-side evaluation over |k| <= k_cut, with a bound on the dropped tail.

    With ``k_cut=None`` the cut is chosen so the tail bound is below ``tol``.
    """
    decay = decay or stored_decay_constants()
    parts = _PoissonParts(p, table)
    if k_cut is None:
        k_cut = 1
        while parts.tail_bound(k_cut, decay) >= tol:
            k_cut *= 2
    if k_cut < 1:
        raise ValueError("k_cut must be >= 1")
    q = p.q
    ks = np.arange(-k_cut, k_cut + 1)
    what = bump_fourier_grid(ks * parts.a)
    terms = what * parts.h[ks % q]
    nondeg = p.N2 / (q * parts.root) * complex(math.fsum(terms.real), math.fsum(terms.imag))
    k0 = p.N2 / (q * parts.root) * complex(what[k_cut] * parts.h[0])
    deg = 0j
    if parts.deg_n1 and parts.deg_m:
        mult = what[ks % q == 0]
        deg = p.N2 / parts.root * parts.deg_n1 * parts.deg_m * complex(
            math.fsum(mult.real), math.fsum(mult.imag))
    value = nondeg + deg
    tail = parts.tail_bound(k_cut, decay)
    return SumReport(
        value,
        parts.terms + len(ks),
        "poisson",
        error_estimate=tail,
        flagged=tail > tol,
        parts={"nondegenerate": nondeg, "degenerate": deg, "k0": k0, "k_cut": k_cut,
               "smooth_lambda_sum": parts.smooth_lambda_sum},
    )


def smooth_lambda_sum(M: float, table: TauTable) -> float:
    """sum_m lam(m) W(m/M)."""
    ms = support(M)
    if not len(ms):
        return 0.0
    table.require(int(ms[-1]))
    return math.fsum(table.lam[ms] * bump_weight(ms / M))


def voronoi_scan(scales, table: TauTable) -> list[tuple[float, float]]:
    """(M, |sum lam(m) W(m/M)| / sqrt(M)) for each scale."""
    return [(M, abs(smooth_lambda_sum(M, table)) / math.sqrt(M)) for M in scales]
