"""Exact affine expressions and inequalities over named variables."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

Rational = Fraction


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class MissingAssignment(KeyError):
    """A point does not assign a variable that the expression needs."""


@dataclass(frozen=True)
class AffineExpr:
    """``constant + sum(coeff * var)``; zero coefficients are never stored."""

    constant: Fraction = Fraction(0)
    terms: tuple[tuple[str, Fraction], ...] = ()

    @classmethod
    def build(cls, constant=0, coeffs: Mapping[str, object] | Iterable = ()) -> "AffineExpr":
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[str, Fraction] = {}
        for name, c in items:
            acc[name] = acc.get(name, Fraction(0)) + as_rational(c)
        terms = tuple(sorted((k, v) for k, v in acc.items() if v != 0))
        return cls(as_rational(constant), terms)

    @classmethod
    def var(cls, name: str) -> "AffineExpr":
        return cls(Fraction(0), ((name, Fraction(1)),))

    @property
    def coeffs(self) -> dict[str, Fraction]:
        return dict(self.terms)

    @property
    def variables(self) -> set[str]:
        return {k for k, _ in self.terms}

    def is_constant(self) -> bool:
        return not self.terms

    def coeff(self, name: str) -> Fraction:
        for k, v in self.terms:
            if k == name:
                return v
        return Fraction(0)

    def __add__(self, other: "AffineExpr") -> "AffineExpr":
        return AffineExpr.build(self.constant + other.constant, self.terms + other.terms)

    def __neg__(self) -> "AffineExpr":
        return self.scale(-1)

    def __sub__(self, other: "AffineExpr") -> "AffineExpr":
        return self + (-other)

    def scale(self, factor) -> "AffineExpr":
        f = as_rational(factor)
        if f == 0:
            return AffineExpr()
        return AffineExpr(self.constant * f, tuple((k, v * f) for k, v in self.terms))

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        total = self.constant
        for name, c in self.terms:
            try:
                total += c * point[name]
            except KeyError:
                raise MissingAssignment(name) from None
        return total

    def __str__(self) -> str:
        parts: list[str] = []
        for name, c in self.terms:
            mag = abs(c)
            body = name if mag == 1 else f"{format_rational(mag)}*{name}"
            parts.append(("- " if c < 0 else "+ ") + body)
        if self.constant != 0 or not parts:
            c = self.constant
            parts.append(("- " if c < 0 else "+ ") + format_rational(abs(c)))
        text = " ".join(parts)
        if text.startswith("+ "):
            return text[2:]
        return "-" + text[2:]


RELATIONS = ("<=", "==", ">=")


@dataclass(frozen=True)
class AffineInequality:
    lhs: AffineExpr
    relation: str
    rhs: AffineExpr

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")

    @property
    def variables(self) -> set[str]:
        return self.lhs.variables | self.rhs.variables

    def normalized(self) -> tuple[AffineExpr, str]:
        """``(lhs - rhs, relation)``, to be read as ``expr relation 0``."""
        return self.lhs - self.rhs, self.relation

    def reversed(self) -> "AffineInequality":
        """Non-strict complement: ``a <= b`` becomes ``a >= b``."""
        if self.relation == "==":
            raise ValueError("an equality has no non-strict complement")
        flipped = ">=" if self.relation == "<=" else "<="
        return AffineInequality(self.lhs, flipped, self.rhs)

    def holds(self, point: Mapping[str, Fraction]) -> bool:
        diff = self.lhs.evaluate(point) - self.rhs.evaluate(point)
        if self.relation == "<=":
            return diff <= 0
        if self.relation == ">=":
            return diff >= 0
        return diff == 0

    def __str__(self) -> str:
        return f"{self.lhs} {self.relation} {self.rhs}"
