"""Parser for the ``.opt`` program format.

One statement per line, ``#`` starts a comment::

    vars m n
    const theta = 7/64
    constraint m + n <= 2
    bound max((m - n - 1)/2, (m - n - 1)/4)
    bound if(m + n <= 1; (m + n)/2; 10)

Expressions are parsed with ordinary precedence and then normalized into the
Affine / Max / Min / If tree: sums and constant multiples are pushed through
max, min and if, so ``a + max(b, c)`` becomes ``max(a + b, a + c)`` and a
negative factor turns a max into a min.  Products need one constant factor and
division is by constants only, so everything stays piecewise linear.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .affine import AffineExpr, AffineInequality
from .bound import Affine, BoundExpr, If, Max, Min, bound_variables, walk
from .program import Program


class ProgramError(ValueError):
    pass


class ProgramSyntaxError(ProgramError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnboundedPolytopeError(ProgramError):
    pass


class NonConstantElseWarning(UserWarning):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op><=|>=|==|[-+*/(),;=]))"
)


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(text: str, lineno: int, col0: int) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = len(text[pos:]) - len(text[pos:].lstrip())
            raise ProgramSyntaxError(f"unexpected character {text[pos + stripped]!r}",
                                     lineno, col0 + pos + stripped + 1)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), col0 + m.start(kind) + 1))
        pos = m.end()
    toks.append(_Tok("end", "", col0 + len(text) + 1))
    return toks


def _add(a: BoundExpr, b: BoundExpr) -> BoundExpr:
    if isinstance(a, Affine) and isinstance(b, Affine):
        return Affine(a.expr + b.expr)
    if isinstance(a, Affine):
        a, b = b, a
    if isinstance(a, Max):
        return Max(tuple(_add(c, b) for c in a.children))
    if isinstance(a, Min):
        return Min(tuple(_add(c, b) for c in a.children))
    return If(a.condition, _add(a.then, b), _add(a.otherwise, b))


def _scale(a: BoundExpr, f: Fraction) -> BoundExpr:
    if f == 0:
        return Affine(AffineExpr())
    if isinstance(a, Affine):
        return Affine(a.expr.scale(f))
    if isinstance(a, If):
        return If(a.condition, _scale(a.then, f), _scale(a.otherwise, f))
    kids = tuple(_scale(c, f) for c in a.children)
    keep = f > 0
    if isinstance(a, Max):
        return Max(kids) if keep else Min(kids)
    return Min(kids) if keep else Max(kids)


class _LineParser:
    def __init__(self, toks, lineno, variables, constants):
        self.toks = toks
        self.i = 0
        self.lineno = lineno
        self.variables = variables
        self.constants = constants

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ProgramSyntaxError(msg, self.lineno, tok.col)

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok.text != text or tok.kind == "end":
            self.error(f"expected {text!r}, found {tok.text or 'end of line'!r}")
        return self.next()

    def at_end(self):
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")

    def expr(self) -> BoundExpr:
        value = self.term()
        while self.peek().text in ("+", "-"):
            op = self.next().text
            rhs = self.term()
            value = _add(value, rhs if op == "+" else _scale(rhs, Fraction(-1)))
        return value

    def term(self) -> BoundExpr:
        value = self.unary()
        while self.peek().text in ("*", "/"):
            op_tok = self.next()
            rhs = self.unary()
            if op_tok.text == "*":
                if _is_const(value):
                    value = _scale(rhs, value.expr.constant)
                elif _is_const(rhs):
                    value = _scale(value, rhs.expr.constant)
                else:
                    self.error("product of two non-constant expressions", op_tok)
            else:
                if not _is_const(rhs):
                    self.error("division by a non-constant expression", op_tok)
                if rhs.expr.constant == 0:
                    self.error("division by zero", op_tok)
                value = _scale(value, 1 / rhs.expr.constant)
        return value

    def unary(self) -> BoundExpr:
        if self.peek().text == "-":
            self.next()
            return _scale(self.unary(), Fraction(-1))
        if self.peek().text == "+":
            self.next()
            return self.unary()
        return self.atom()

    def atom(self) -> BoundExpr:
        tok = self.peek()
        if tok.kind == "num":
            self.next()
            return Affine(AffineExpr(Fraction(int(tok.text))))
        if tok.kind == "name":
            self.next()
            if tok.text in ("max", "min") and self.peek().text == "(":
                return self.call(tok.text)
            if tok.text == "if" and self.peek().text == "(":
                return self.conditional()
            if tok.text in self.constants:
                return Affine(AffineExpr(self.constants[tok.text]))
            if tok.text in self.variables:
                return Affine(AffineExpr.var(tok.text))
            raise ProgramError(f"line {self.lineno}, column {tok.col}: undeclared variable {tok.text!r}")
        if tok.text == "(":
            self.next()
            value = self.expr()
            self.expect(")")
            return value
        self.error(f"unexpected {tok.text or 'end of line'!r}")

    def call(self, fn: str) -> BoundExpr:
        self.expect("(")
        args = [self.expr()]
        while self.peek().text == ",":
            self.next()
            args.append(self.expr())
        close = self.expect(")")
        if len(args) < 2:
            self.error(f"{fn} needs at least two arguments", close)
        return Max(tuple(args)) if fn == "max" else Min(tuple(args))

    def conditional(self) -> BoundExpr:
        self.expect("(")
        lhs = self.affine()
        self.expect("<=")
        rhs = self.affine()
        self.expect(";")
        then = self.expr()
        self.expect(";")
        otherwise = self.expr()
        self.expect(")")
        return If(AffineInequality(lhs, "<=", rhs), then, otherwise)

    def affine(self) -> AffineExpr:
        tok = self.peek()
        value = self.expr()
        if not isinstance(value, Affine):
            self.error("expected an affine expression", tok)
        return value.expr


def _is_const(b: BoundExpr) -> bool:
    return isinstance(b, Affine) and b.expr.is_constant()


def parse_program(text: str, check_bounded: bool = True) -> Program:
    variables: list[str] = []
    constants: dict[str, Fraction] = {}
    constraints: list[AffineInequality] = []
    bounds: list[BoundExpr] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        indent = len(line) - len(stripped)
        keyword, _, rest = stripped.partition(" ")
        col0 = indent + len(keyword) + 1
        if keyword == "vars":
            for tok in _tokenize(rest, lineno, col0)[:-1]:
                if tok.kind != "name" or tok.text in ("max", "min", "if"):
                    raise ProgramSyntaxError(f"bad variable name {tok.text!r}", lineno, tok.col)
                if tok.text in variables or tok.text in constants:
                    raise ProgramSyntaxError(f"duplicate name {tok.text!r}", lineno, tok.col)
                variables.append(tok.text)
            continue
        toks = _tokenize(rest, lineno, col0)
        lp = _LineParser(toks, lineno, variables, constants)
        if keyword == "const":
            name = lp.next()
            if name.kind != "name":
                lp.error("expected a constant name", name)
            if name.text in variables or name.text in constants:
                raise ProgramSyntaxError(f"duplicate name {name.text!r}", lineno, name.col)
            lp.expect("=")
            value = lp.affine()
            lp.at_end()
            if not value.is_constant():
                raise ProgramSyntaxError("constant must not depend on variables", lineno, name.col)
            constants[name.text] = value.constant
        elif keyword == "constraint":
            lhs = lp.affine()
            rel = lp.next()
            if rel.text not in ("<=", "==", ">="):
                lp.error("expected <=, == or >=", rel)
            rhs = lp.affine()
            lp.at_end()
            constraints.append(AffineInequality(lhs, rel.text, rhs))
        elif keyword == "bound":
            value = lp.expr()
            lp.at_end()
            bounds.append(value)
        else:
            raise ProgramSyntaxError(f"unknown statement {keyword!r}", lineno, indent + 1)

    if not variables:
        raise ProgramError("no variables declared")
    if not bounds:
        raise ProgramError("program has no bounds")
    program = Program(tuple(variables), tuple(constraints), tuple(bounds), constants)
    _check_else_branches(program)
    if check_bounded:
        check_polytope_bounded(program)
    return program


def _check_else_branches(p: Program) -> None:
    # Closed cells on both sides of an If are only exact when the else-branch
    # is an inert constant (the bundled programs use 10).
    for b in p.bounds:
        for node in walk(b):
            if isinstance(node, If) and not _is_const(node.otherwise):
                warnings.warn(f"non-constant else-branch in {node.condition}; "
                              "branch enumeration may overshoot on the boundary",
                              NonConstantElseWarning, stacklevel=3)


def variable_ranges(p: Program) -> dict[str, tuple[Fraction, Fraction]]:
    """Exact min and max of every variable over the constraint polytope."""
    from ..optimizer.simplex import LPInstance, simplex_solve

    ranges = {}
    for v in p.variables:
        ends = []
        for sign in (-1, 1):
            lp = LPInstance(p.variables, p.constraints, AffineExpr.build(0, {v: sign}))
            res = simplex_solve(lp)
            if res.status == "infeasible":
                raise ProgramError("constraint polytope is empty")
            if res.status == "unbounded":
                raise UnboundedPolytopeError(f"variable {v!r} is unbounded over the constraints")
            ends.append(sign * res.value)
        ranges[v] = (ends[0], ends[1])
    return ranges


def check_polytope_bounded(p: Program) -> None:
    used = set().union(*(bound_variables(b) for b in p.bounds))
    for c in p.constraints:
        used |= c.variables
    unknown = used - set(p.variables)
    if unknown:
        raise ProgramError(f"undeclared variables: {sorted(unknown)}")
    variable_ranges(p)
