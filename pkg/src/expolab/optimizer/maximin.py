"""Exact maximization of ``min(bounds)`` for Max / Min / If bound trees.

Why enumerating branches is exact
---------------------------------
For a fixed *branch selection* (one child per Max node, one polarity per If
node) every bound collapses to a Min of affine leaves, and ``t <= min(...)``
is a conjunction of linear constraints.  So each branch is one LP in
``(x, t)``.

* No overshoot: in a branch, each Max node is replaced by one of its children,
  which is ``<=`` the Max, and each If node by the side its polarity constraint
  enforces.  Hence the branch objective is ``<=`` the true objective at every
  point of the branch cell, and the branch LP optimum is attained by a point
  whose true value is at least as large.
* No undershoot: at any feasible point ``x`` pick, at every Max node, the child
  attaining the max and, at every If node, the polarity the point actually
  satisfies.  That selection's branch objective equals the true objective at
  ``x``, so its LP optimum is ``>=`` the true value at ``x``.

The max over branches therefore equals the true maximum.  If polarities use
closed cells on both sides; the boundary of a failing condition belongs to the
else-branch LP although the true value there is the then-branch.  This is
harmless when every else-branch is the inert constant 10 used by the source
programs (the parser warns otherwise).  In general the reported optimum is then
the supremum of the objective, and ``attained`` records whether some optimal
branch witness reaches it under the true (boundary-to-then) semantics.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from ..exprlang.affine import AffineExpr, AffineInequality
from ..exprlang.bound import Affine, BoundExpr, If, Max, Min, branching_nodes, walk
from ..exprlang.program import Program, check_feasible, eval_program
from .simplex import LPInstance, LPResult, simplex_solve

OBJECTIVE_VAR = "__t"


@dataclass(frozen=True)
class BranchSelection:
    """One entry per Max/If node in tree order: a child index for Max, a bool (condition holds) for If."""

    choices: tuple[int | bool, ...]

    def describe(self, program: Program) -> list[str]:
        out = []
        for k, (node, c) in enumerate(zip(branching_nodes(program.bounds), self.choices)):
            if isinstance(node, Max):
                out.append(f"node {k}: max child {c}")
            else:
                out.append(f"node {k}: if {'holds' if c else 'fails'}")
        return out


def branch_space_size(program: Program) -> int:
    """Product of Max arities times 2 per If node."""
    size = 1
    for node in branching_nodes(program.bounds):
        size *= len(node.children) if isinstance(node, Max) else 2
    return size


def _n_branching(b: BoundExpr) -> int:
    return sum(1 for n in walk(b) if isinstance(n, (Max, If)))


# An option is (choices: dict node_index -> choice, conditions, leaves).
def _options(node: BoundExpr, idx: int) -> list[tuple[dict, list[AffineInequality], list[AffineExpr]]]:
    if isinstance(node, Affine):
        return [({}, [], [node.expr])]
    if isinstance(node, Max):
        out = []
        pos = idx + 1
        for k, child in enumerate(node.children):
            for ch, conds, leaves in _options(child, pos):
                out.append(({idx: k, **ch}, conds, leaves))
            pos += _n_branching(child)
        return out
    if isinstance(node, Min):
        per_child = []
        pos = idx
        for child in node.children:
            per_child.append(_options(child, pos))
            pos += _n_branching(child)
        return [_merge(combo) for combo in itertools.product(*per_child)]
    then_start = idx + 1
    else_start = then_start + _n_branching(node.then)
    out = [({idx: True, **ch}, [node.condition, *conds], leaves)
           for ch, conds, leaves in _options(node.then, then_start)]
    out += [({idx: False, **ch}, [node.condition.reversed(), *conds], leaves)
            for ch, conds, leaves in _options(node.otherwise, else_start)]
    return out


def _merge(combo):
    choices: dict = {}
    conds: list = []
    leaves: list = []
    for ch, c, lv in combo:
        choices.update(ch)
        conds += c
        leaves += lv
    return choices, conds, leaves


def enumerate_branches(program: Program) -> Iterator[BranchSelection]:
    """Distinct reachable selections; nodes under an unselected branch are pinned to their default."""
    nodes = branching_nodes(program.bounds)
    defaults = [0 if isinstance(n, Max) else True for n in nodes]
    per_bound = []
    pos = 0
    for b in program.bounds:
        per_bound.append(_options(b, pos))
        pos += _n_branching(b)
    for combo in itertools.product(*per_bound):
        choices = list(defaults)
        for k, v in _merge(combo)[0].items():
            choices[k] = v
        yield BranchSelection(tuple(choices))


def _collapse(node: BoundExpr, choices: Sequence, idx: int, conds: list, leaves: list) -> int:
    """Appends the branch's conditions and affine leaves; returns the next node index."""
    if isinstance(node, Affine):
        leaves.append(node.expr)
        return idx
    if isinstance(node, Min):
        for child in node.children:
            idx = _collapse(child, choices, idx, conds, leaves)
        return idx
    if isinstance(node, Max):
        pick = choices[idx]
        pos = idx + 1
        for k, child in enumerate(node.children):
            if k == pick:
                _collapse(child, choices, pos, conds, leaves)
            pos += _n_branching(child)
        return pos
    holds = choices[idx]
    then_start = idx + 1
    else_start = then_start + _n_branching(node.then)
    if holds:
        conds.append(node.condition)
        _collapse(node.then, choices, then_start, conds, leaves)
    else:
        conds.append(node.condition.reversed())
        _collapse(node.otherwise, choices, else_start, conds, leaves)
    return else_start + _n_branching(node.otherwise)


def lower_branch(program: Program, selection: BranchSelection) -> LPInstance:
    n_nodes = len(branching_nodes(program.bounds))
    if len(selection.choices) != n_nodes:
        raise ValueError(f"selection has {len(selection.choices)} entries, program has {n_nodes} branching nodes")
    conds: list[AffineInequality] = []
    leaves: list[AffineExpr] = []
    idx = 0
    for b in program.bounds:
        idx = _collapse(b, selection.choices, idx, conds, leaves)
    t = AffineExpr.var(OBJECTIVE_VAR)
    constraints = list(program.constraints) + conds
    seen = set()
    for leaf in leaves:
        if leaf not in seen:
            seen.add(leaf)
            constraints.append(AffineInequality(t, "<=", leaf))
    return LPInstance(program.variables + (OBJECTIVE_VAR,), tuple(constraints), t)


@dataclass
class OptimizeResult:
    optimum: Fraction
    witness: dict[str, Fraction]
    selection: BranchSelection
    branches_total: int
    branches_infeasible: int
    branch_space: int
    attained: bool = True
    branch_optima: list[Fraction | None] = field(default_factory=list, repr=False)


class NoFeasibleBranch(RuntimeError):
    pass


def maximin_optimize(program: Program) -> OptimizeResult:
    results: list[tuple[BranchSelection, LPResult]] = []
    infeasible = 0
    for sel in enumerate_branches(program):
        res = simplex_solve(lower_branch(program, sel))
        if res.status == "unbounded":
            # Cannot happen for a bounded polytope with at least one affine leaf per bound.
            raise ArithmeticError(f"branch LP unbounded for {sel}")
        if res.status == "infeasible":
            infeasible += 1
        results.append((sel, res))

    optimal = [(s, r) for s, r in results if r.status == "optimal"]
    if not optimal:
        raise NoFeasibleBranch(f"all {len(results)} branches infeasible")
    best = max(r.value for _, r in optimal)

    chosen = None
    fallback = None
    for sel, res in optimal:
        if res.value != best:
            continue
        point = {v: res.witness[v] for v in program.variables}
        fallback = fallback or (sel, point)
        if eval_program(program, point) == best:
            chosen = (sel, point)
            break
    attained = chosen is not None
    chosen = chosen or fallback

    return OptimizeResult(
        optimum=best,
        witness=chosen[1],
        selection=chosen[0],
        branches_total=len(results),
        branches_infeasible=infeasible,
        branch_space=branch_space_size(program),
        attained=attained,
        branch_optima=[r.value if r.status == "optimal" else None for _, r in results],
    )


@dataclass
class Certificate:
    feasible: bool
    violated: list[AffineInequality]
    value: Fraction
    claimed: Fraction
    attains: bool


def certify(program: Program, claimed_value: Fraction, point: Mapping[str, Fraction]) -> Certificate:
    feasible, violated = check_feasible(program, point)
    value = eval_program(program, point)
    return Certificate(feasible, violated, value, Fraction(claimed_value), value == claimed_value)
