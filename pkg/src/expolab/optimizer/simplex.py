"""Exact two-phase simplex with Bland's rule.

Variables are free; each one is split into a nonnegative pair ``x = x+ - x-``.
Bland's rule (lowest-index entering column, lowest-index leaving basic
variable on ratio ties) guarantees termination with exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

from ..exprlang.affine import AffineExpr, AffineInequality

# Pivoting runs on gmpy2.mpq (same exact semantics as Fraction, far cheaper);
# results are converted back to Fraction.
_ZERO = mpq(0)
_ONE = mpq(1)


def _q(x: Fraction) -> mpq:
    return mpq(x.numerator, x.denominator)


def _frac(x: mpq) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass(frozen=True)
class LPInstance:
    """Maximize ``objective`` subject to ``constraints`` over free ``variables``.

    Branch LPs built by the optimizer always use the objective ``t``; the
    general form is also used to read off variable ranges of a polytope.
    """

    variables: tuple[str, ...]
    constraints: tuple[AffineInequality, ...]
    objective: AffineExpr


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    witness: dict[str, Fraction] = field(default_factory=dict)
    pivots: int = 0


class _Tableau:
    def __init__(self, rows, rhs, basis, ncols):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols
        self.pivots = 0

    def pivot(self, r: int, c: int, obj: list[Fraction], obj_val: list[Fraction]) -> None:
        prow = self.rows[r]
        inv = _ONE / prow[c]
        if inv != 1:
            for j in range(self.ncols):
                if prow[j]:
                    prow[j] *= inv
            self.rhs[r] *= inv
        nz = [j for j in range(self.ncols) if prow[j]]
        prhs = self.rhs[r]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
                self.rhs[i] -= f * prhs
        f = obj[c]
        if f:
            for j in nz:
                obj[j] -= f * prow[j]
            obj_val[0] += f * prhs
        self.basis[r] = c
        self.pivots += 1

    def reduced_costs(self, cost: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
        obj = list(cost)
        val = _ZERO
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[i]
                for j in range(self.ncols):
                    if row[j]:
                        obj[j] -= cb * row[j]
                val += cb * self.rhs[i]
        return obj, [val]

    def maximize(self, cost: Sequence[Fraction], allowed: Sequence[bool]) -> tuple[bool, Fraction]:
        """Returns ``(bounded, optimum)``."""
        obj, val = self.reduced_costs(cost)
        while True:
            enter = next((j for j in range(self.ncols) if allowed[j] and obj[j] > 0), None)
            if enter is None:
                return True, val[0]
            leave = None
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if (best is None or ratio < best
                            or (ratio == best and self.basis[i] < self.basis[leave])):
                        best, leave = ratio, i
            if leave is None:
                return False, val[0]
            self.pivot(leave, enter, obj, val)


def simplex_solve(lp: LPInstance) -> LPResult:
    names = list(lp.variables)
    index = {v: k for k, v in enumerate(names)}
    nv = len(names)
    ns = sum(1 for c in lp.constraints if c.relation != "==")
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    basis: list[int] = []
    needs_art: list[bool] = []
    slack = 2 * nv
    for con in lp.constraints:
        expr, rel = con.normalized()
        row = [_ZERO] * (2 * nv + ns)
        for name, c in expr.terms:
            k = index[name]
            row[2 * k] = _q(c)
            row[2 * k + 1] = -_q(c)
        b = -_q(expr.constant)
        slack_col = None
        if rel != "==":
            slack_col = slack
            row[slack] = _ONE if rel == "<=" else -_ONE
            slack += 1
        if b < 0:
            row = [-x for x in row]
            b = -b
        if slack_col is not None and row[slack_col] == 1:
            basis.append(slack_col)
            needs_art.append(False)
        else:
            basis.append(-1)
            needs_art.append(True)
        rows.append(row)
        rhs.append(b)

    n_struct = 2 * nv + ns
    n_art = sum(needs_art)
    ncols = n_struct + n_art
    art = n_struct
    for i, row in enumerate(rows):
        row.extend([_ZERO] * n_art)
        if needs_art[i]:
            row[art] = _ONE
            basis[i] = art
            art += 1

    tab = _Tableau(rows, rhs, basis, ncols)

    if n_art:
        cost1 = [_ZERO] * n_struct + [-_ONE] * n_art
        _, best = tab.maximize(cost1, [True] * ncols)
        if best < 0:
            return LPResult("infeasible", pivots=tab.pivots)
        # Drive zero-level artificials out of the basis; drop redundant rows.
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= n_struct:
                col = next((j for j in range(n_struct) if tab.rows[i][j]), None)
                if col is None:
                    del tab.rows[i], tab.rhs[i], tab.basis[i]
                    continue
                tab.pivot(i, col, [_ZERO] * ncols, [_ZERO])
            i += 1

    cost = [_ZERO] * ncols
    for name, c in lp.objective.terms:
        k = index[name]
        cost[2 * k] = _q(c)
        cost[2 * k + 1] = -_q(c)
    allowed = [j < n_struct for j in range(ncols)]
    bounded, best = tab.maximize(cost, allowed)
    if not bounded:
        return LPResult("unbounded", pivots=tab.pivots)

    xs = [_ZERO] * ncols
    for i, b in enumerate(tab.basis):
        xs[b] = tab.rhs[i]
    witness = {v: _frac(xs[2 * k] - xs[2 * k + 1]) for k, v in enumerate(names)}
    value = _frac(best) + lp.objective.constant
    for con in lp.constraints:
        if not con.holds(witness):
            raise ArithmeticError(f"simplex witness violates {con}")
    if lp.objective.evaluate(witness) != value:
        raise ArithmeticError("simplex objective value does not match its witness")
    return LPResult("optimal", value, witness, tab.pivots)
