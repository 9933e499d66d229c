from .affine import AffineExpr, AffineInequality, MissingAssignment, Rational, as_rational, format_rational
from .bound import Affine, BoundExpr, If, Max, Min, eval_bound, format_bound
from .parser import (NonConstantElseWarning, ProgramError, ProgramSyntaxError,
                     UnboundedPolytopeError, parse_program, variable_ranges)
from .program import Program, check_feasible, eval_program, format_program

__all__ = [
    "Affine", "AffineExpr", "AffineInequality", "BoundExpr", "If", "Max", "Min",
    "MissingAssignment", "NonConstantElseWarning", "Program", "ProgramError",
    "ProgramSyntaxError", "Rational", "UnboundedPolytopeError", "as_rational",
    "check_feasible", "eval_bound", "eval_program", "format_bound", "format_program",
    "format_rational", "parse_program", "variable_ranges",
]
