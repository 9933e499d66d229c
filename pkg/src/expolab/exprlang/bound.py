"""Max / Min / If trees over affine leaves."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Union

from .affine import AffineExpr, AffineInequality


@dataclass(frozen=True)
class Affine:
    expr: AffineExpr


@dataclass(frozen=True)
class Max:
    children: tuple["BoundExpr", ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("max needs at least two arguments")


@dataclass(frozen=True)
class Min:
    children: tuple["BoundExpr", ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("min needs at least two arguments")


@dataclass(frozen=True)
class If:
    condition: AffineInequality
    then: "BoundExpr"
    otherwise: "BoundExpr"

    def __post_init__(self):
        if self.condition.relation != "<=":
            raise ValueError("if-conditions must be written as a <= b")


BoundExpr = Union[Affine, Max, Min, If]


def eval_bound(b: BoundExpr, point: Mapping[str, Fraction]) -> Fraction:
    if isinstance(b, Affine):
        return b.expr.evaluate(point)
    if isinstance(b, Max):
        return max(eval_bound(c, point) for c in b.children)
    if isinstance(b, Min):
        return min(eval_bound(c, point) for c in b.children)
    if isinstance(b, If):
        # <= is non-strict, so the boundary belongs to the then-branch.
        if b.condition.holds(point):
            return eval_bound(b.then, point)
        return eval_bound(b.otherwise, point)
    raise TypeError(f"not a bound node: {b!r}")


def children(b: BoundExpr) -> tuple[BoundExpr, ...]:
    if isinstance(b, (Max, Min)):
        return b.children
    if isinstance(b, If):
        return (b.then, b.otherwise)
    return ()


def walk(b: BoundExpr) -> Iterator[BoundExpr]:
    """Pre-order traversal."""
    yield b
    for c in children(b):
        yield from walk(c)


def bound_variables(b: BoundExpr) -> set[str]:
    out: set[str] = set()
    for node in walk(b):
        if isinstance(node, Affine):
            out |= node.expr.variables
        elif isinstance(node, If):
            out |= node.condition.variables
    return out


def branching_nodes(bounds) -> list[BoundExpr]:
    """Max and If nodes of all bounds, in tree (pre-)order; this order indexes branch selections."""
    return [n for b in bounds for n in walk(b) if isinstance(n, (Max, If))]


def format_bound(b: BoundExpr) -> str:
    if isinstance(b, Affine):
        return str(b.expr)
    if isinstance(b, Max):
        return "max(" + ", ".join(format_bound(c) for c in b.children) + ")"
    if isinstance(b, Min):
        return "min(" + ", ".join(format_bound(c) for c in b.children) + ")"
    cond = b.condition
    return f"if({cond.lhs} <= {cond.rhs}; {format_bound(b.then)}; {format_bound(b.otherwise)})"
