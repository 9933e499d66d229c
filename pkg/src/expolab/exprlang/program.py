from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .affine import AffineInequality, format_rational
from .bound import BoundExpr, eval_bound, format_bound


@dataclass(frozen=True)
class Program:
    """Maximize ``min(bounds)`` over the polytope cut out by ``constraints``."""

    variables: tuple[str, ...]
    constraints: tuple[AffineInequality, ...]
    bounds: tuple[BoundExpr, ...]
    constants: Mapping[str, Fraction] = field(default_factory=dict)

    def eval_bound(self, index: int, point: Mapping[str, Fraction]) -> Fraction:
        return eval_bound(self.bounds[index], point)


def eval_program(p: Program, point: Mapping[str, Fraction]) -> Fraction:
    """Objective value at ``point``; feasibility is not checked here."""
    return min(eval_bound(b, point) for b in p.bounds)


def check_feasible(p: Program, point: Mapping[str, Fraction]) -> tuple[bool, list[AffineInequality]]:
    violated = [c for c in p.constraints if not c.holds(point)]
    return not violated, violated


def format_program(p: Program) -> str:
    lines = ["vars " + " ".join(p.variables)]
    lines += [f"const {k} = {format_rational(v)}" for k, v in p.constants.items()]
    lines += [f"constraint {c}" for c in p.constraints]
    lines += [f"bound {format_bound(b)}" for b in p.bounds]
    return "\n".join(lines) + "\n"
