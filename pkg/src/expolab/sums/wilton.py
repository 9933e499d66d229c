"""Additively twisted partial sums of Hecke eigenvalues."""

from __future__ import annotations

import json
import math
from importlib import resources

import numpy as np

from .. import kernels
from ..nt.tau import TauTable

WILTON_RATIO_LIMIT = 2.5
PILOT_SCALES = (2**7, 2**14)


def wilton_sum(N: int, alpha: float, table: TauTable) -> complex:
    """sum_{n <= N} lam(n) e(n alpha)."""
    N = int(N)
    if N < 1:
        return 0j
    table.require(N)
    out = kernels.twisted_partial_sums(table.lam, np.array([float(alpha)]), np.array([N], dtype=np.int64))
    return complex(out[0, 0])


def default_alpha_grid() -> np.ndarray:
    """256 frequencies: 128 rationals and 128 equispaced points with an irrational offset.

    Rationals: 0, a/q for q in (3, 5, 7, 101) and 1 <= a < q (112 points), and
    a/16 for odd a (8 points) plus a/32 for a in (1, 3, 5, 7, 9, 11, 13) to reach 128.
    """
    rats = {0.0}
    for q in (3, 5, 7, 101):
        rats.update(a / q for a in range(1, q))
    rats.update(a / 16 for a in range(1, 16, 2))
    rats.update(a / 32 for a in range(1, 15, 2))
    rationals = sorted(rats)
    offset = math.sqrt(2) - 1
    proxies = [(j + offset) / 128 for j in range(128)]
    grid = np.array(rationals + proxies)
    if len(rationals) != 128 or len(np.unique(grid)) != 256:
        raise AssertionError("alpha grid construction is off")
    return grid


def wilton_scan(n_list, alphas, table: TauTable) -> dict[int, float]:
    """R(N) = max over alphas of |wilton_sum(N, alpha)| / sqrt(N)."""
    ns = np.array(sorted({int(n) for n in n_list}), dtype=np.int64)
    table.require(int(ns[-1]))
    sums = kernels.twisted_partial_sums(table.lam, np.asarray(alphas, dtype=np.float64), ns)
    peaks = np.abs(sums).max(axis=0)
    return {int(n): float(peak / math.sqrt(n)) for n, peak in zip(ns, peaks)}


def pilot_record() -> dict:
    return json.loads(resources.files("expolab.data").joinpath("wilton_pilot.json").read_text())
