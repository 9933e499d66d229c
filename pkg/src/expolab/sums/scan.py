from __future__ import annotations

import math

from ..nt.tau import TauTable, tau_table
from .epm import e_pm
from .params import SumParams


def e_bound_scan(q: int, total: float, sign: int = 1, table: TauTable | None = None) -> list[dict]:
    """|E+-(M, N)| next to the trivial-bound shape sqrt(MN)/q on dyadic M, N with MN <= total.

    Diagnostic only: the implied constants of the bound are unknown, so nothing
    here passes or fails.
    """
    scales = [2**k for k in range(0, int(math.log2(total)) + 1)]
    pairs = [(M, N) for M in scales for N in scales if M * N <= total]
    if table is None:
        table = tau_table(2 * max(M for M, _ in pairs))
    rows = []
    for M, N in pairs:
        rep = e_pm(SumParams(q, sign, M, N), table)
        shape = math.sqrt(M * N) / q
        rows.append({"M": M, "N": N, "abs_E": abs(rep.value), "trivial_shape": shape,
                     "ratio": abs(rep.value) / shape})
    return rows
