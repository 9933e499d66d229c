"""E+-(M, N): the off-diagonal divisor-twisted sum minus its expected main term."""

from __future__ import annotations

import math

import numpy as np

from ..nt.arith import divisor_counts
from ..nt.tau import TauTable
from ..nt.weight import bump_weight
from .params import SumParams, SumReport, support


def _weighted(p: SumParams, table: TauTable):
    ms = support(p.M)
    ns = support(p.N)
    if len(ms):
        table.require(int(ms[-1]))
    wm = table.lam[ms] * bump_weight(ms / p.M) if len(ms) else np.zeros(0)
    d = divisor_counts(int(ns[-1])) if len(ns) else np.zeros(1, dtype=np.int64)
    wn = d[ns] * bump_weight(ns / p.N) if len(ns) else np.zeros(0)
    return ms, wm, ns, wn


def _diagonal(p: SumParams, ms, wm, ns, wn) -> float:
    """Sum of the m = n pairs that satisfy the congruence (excluded from S1)."""
    wn_at = dict(zip(ns.tolist(), wn.tolist()))
    terms = []
    for m, w in zip(ms.tolist(), wm.tolist()):
        if m in wn_at and (m - p.sign * m) % p.q == 0:
            terms.append(w * wn_at[m])
    return math.fsum(terms)


def e_pm(p: SumParams, table: TauTable) -> SumReport:
    """Residue-class bucketing: group n by n mod q, then one pass over m."""
    ms, wm, ns, wn = _weighted(p, table)
    if not len(ms) or not len(ns):
        return SumReport(0.0, 0, "bucket", parts={"s1": 0.0, "s2": 0.0})
    q = p.q
    buckets = [[] for _ in range(q)]
    for n, w in zip(ns.tolist(), wn.tolist()):
        buckets[n % q].append(w)
    bucket = [math.fsum(b) for b in buckets]
    # m = +-n (mod q)  <=>  n = +-m (mod q)
    matched = math.fsum(w * bucket[(p.sign * m) % q] for m, w in zip(ms.tolist(), wm.tolist()))
    root = math.sqrt(p.M * p.N)
    s1 = (matched - _diagonal(p, ms, wm, ns, wn)) / root
    s2 = -math.fsum(wm) * math.fsum(wn) / (q * root)
    return SumReport(s1 + s2, len(ms) + len(ns), "bucket", parts={"s1": s1, "s2": s2})


def _twisted(w, xs, q) -> tuple[np.ndarray, np.ndarray]:
    """Real and imaginary parts of sum_x w(x) e(a x / q) for every a mod q."""
    re = np.empty(q)
    im = np.empty(q)
    for a in range(q):
        ph = 2 * np.pi * ((a * xs) % q) / q
        re[a] = math.fsum(w * np.cos(ph))
        im[a] = math.fsum(w * np.sin(ph))
    return re, im


def e_pm_chardetect(p: SumParams, table: TauTable) -> SumReport:
    """Same sum with the congruence written as (1/q) sum_a e(a(m -+ n)/q)."""
    ms, wm, ns, wn = _weighted(p, table)
    if not len(ms) or not len(ns):
        return SumReport(0.0, 0, "chardetect", parts={"a0": 0.0, "s2": 0.0})
    q = p.q
    a_re, a_im = _twisted(wm, ms, q)
    b_re, b_im = _twisted(wn, ns, q)
    root = math.sqrt(p.M * p.N)
    terms = []
    for a in range(q):
        b = (-p.sign * a) % q
        terms.append(a_re[a] * b_re[b] - a_im[a] * b_im[b])
    a0 = terms[0] / (q * root)
    s2 = -a_re[0] * b_re[0] / (q * root)
    full = math.fsum(terms[1:]) / (q * root)
    value = math.fsum([full, -_diagonal(p, ms, wm, ns, wn) / root, a0, s2])
    return SumReport(value, q * (len(ms) + len(ns)), "chardetect", parts={"a0": a0, "s2": s2})
