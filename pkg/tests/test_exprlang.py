from fractions import Fraction as F
from functools import lru_cache

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from expolab.bundled import PROGRAMS, load_witness, program_text
from expolab.exprlang import (Affine, AffineExpr, AffineInequality, If, Max, Min,
                              MissingAssignment, NonConstantElseWarning, ProgramError,
                              ProgramSyntaxError, UnboundedPolytopeError, check_feasible,
                              eval_bound, eval_program, format_program, parse_program)
from expolab.exprlang.bound import walk

MINIMAL = "vars x\nconstraint 0 <= x\nconstraint x <= 1\nbound x"


def x_plus(c):
    return AffineExpr.build(c, {"x": 1})


def test_minimal_program():
    p = parse_program(MINIMAL)
    assert p.variables == ("x",)
    assert len(p.constraints) == 2
    assert p.bounds == (Affine(AffineExpr.var("x")),)


def test_in2_shape(in2):
    assert len(in2.variables) == 8
    assert len(in2.bounds) == 8
    # Twelve constraints, three of them equalities.
    assert len(in2.constraints) == 12
    assert sum(c.relation == "==" for c in in2.constraints) == 3


@pytest.mark.parametrize("text, line, col", [
    ("vars x\nconstraint 0 <= x\nconstraint x <= 1\nbound max(x, )", 4, 14),
    ("vars x\nbound max(x)", 2, 12),
    ("vars x\nconstraint x <= 1 +", 2, 20),
    ("vars x\nbound x $ 1", 2, 9),
    ("vars x\nfrobnicate x", 2, 1),
])
def test_syntax_errors_carry_position(text, line, col):
    with pytest.raises(ProgramSyntaxError) as info:
        parse_program(text, check_bounded=False)
    assert (info.value.line, info.value.column) == (line, col)


def test_undeclared_variable():
    with pytest.raises(ProgramError, match="undeclared variable 'y'"):
        parse_program("vars x\nconstraint 0 <= x\nconstraint x <= 1\nbound x + y")


def test_unbounded_polytope():
    with pytest.raises(UnboundedPolytopeError):
        parse_program("vars x\nconstraint 0 <= x\nbound x")


def test_nonlinear_rejected():
    with pytest.raises(ProgramSyntaxError, match="product"):
        parse_program("vars x y\nbound x*y", check_bounded=False)


def test_non_constant_else_warns():
    text = "vars x\nconstraint 0 <= x\nconstraint x <= 1\nbound if(x <= 1/2; x; 1 - x)"
    with pytest.warns(NonConstantElseWarning):
        parse_program(text)


def test_normalization_pushes_sums_and_signs():
    p = parse_program("vars x\nconstraint 0 <= x\nconstraint x <= 1\nbound 1 - 2*max(x, 1/3)")
    (b,) = p.bounds
    assert isinstance(b, Min)
    assert {c.expr for c in b.children} == {AffineExpr.build(1, {"x": -2}), AffineExpr.build(F(1, 3))}


def test_eval_affine():
    assert eval_bound(Affine(x_plus(F(1, 2))), {"x": F(1, 2)}) == 1


def test_eval_if_else_branch():
    b = If(AffineInequality(AffineExpr.var("x"), "<=", AffineExpr.build(1)),
           Affine(AffineExpr.var("x")), Affine(AffineExpr.build(10)))
    assert eval_bound(b, {"x": F(2)}) == 10
    # The boundary belongs to the then-branch.
    assert eval_bound(b, {"x": F(1)}) == 1


def test_eval_missing_variable():
    with pytest.raises(MissingAssignment):
        eval_bound(Affine(x_plus(0)), {})


def test_first_in1_bound_at_recorded_witness(in1):
    w = load_witness("in1_maass").point
    # (m + n)/2 - 1 + 7m/64 evaluated by hand: 21/152 + 63/76 - 1
    assert in1.eval_bound(0, w) == F(21, 152) + F(63, 76) - 1 == F(-5, 152)


@pytest.mark.parametrize("name, value", [("in1_maass", F(-5, 152)), ("in2_holomorphic", F(-1, 22)),
                                         ("in3_ngeqm", F(-1, 20))])
def test_eval_program_at_recorded_witness(name, value):
    p = parse_program(program_text(name))
    assert eval_program(p, load_witness(name).point) == value


def test_eval_program_constant_bound():
    p = parse_program("vars x\nconstraint 0 <= x\nconstraint x <= 1\nbound 0")
    assert eval_program(p, {"x": F(1, 3)}) == 0


@pytest.mark.parametrize("name", ["in1_maass", "in2_holomorphic"])
def test_recorded_witness_feasible(name):
    p = parse_program(program_text(name))
    ok, violated = check_feasible(p, load_witness(name).point)
    assert ok and not violated


def test_infeasible_point_reports_violation(in1):
    point = dict(load_witness("in1_maass").point, m=F(3), n=F(0))
    ok, violated = check_feasible(in1, point)
    assert not ok
    assert "m + n <= 2" in {str(c) for c in violated}


@pytest.mark.parametrize("name", PROGRAMS)
def test_round_trip(name):
    p = parse_program(program_text(name))
    again = parse_program(format_program(p))
    assert again == p


def _first_bound_oracle(m, n):
    # Independent transcription of (m + n)/2 - 1 + 7m/64 in exact arithmetic.
    return (m + n) / 2 - 1 + F(7, 64) * m


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=50)


@given(m=rationals, n=rationals)
def test_bound_evaluation_is_exact(in1, m, n):
    point = {v: F(0) for v in in1.variables} | {"m": m, "n": n}
    assert in1.eval_bound(0, point) == _first_bound_oracle(m, n)


def _selection(b, point):
    """Argmax/argmin child indices and If polarities along the tree."""
    out = []
    for node in walk(b):
        if isinstance(node, (Max, Min)):
            vals = [eval_bound(c, point) for c in node.children]
            best = max(vals) if isinstance(node, Max) else min(vals)
            out.append(tuple(i for i, v in enumerate(vals) if v == best))
        elif isinstance(node, If):
            out.append(node.condition.holds(point))
    return out


@lru_cache(maxsize=None)
def bundled(name):
    return parse_program(program_text(name))


@pytest.mark.parametrize("name", PROGRAMS)
@given(data=st.data())
def test_piecewise_linear_on_cells(name, data):
    p = bundled(name)
    draw = lambda: {v: data.draw(st.fractions(0, 2, max_denominator=40)) for v in p.variables}  # noqa: E731
    x, y = draw(), draw()
    mid = {v: (x[v] + y[v]) / 2 for v in p.variables}
    lowest = [min(range(len(p.bounds)), key=lambda i: p.eval_bound(i, pt)) for pt in (x, y, mid)]
    assume(len(set(lowest)) == 1)
    b = p.bounds[lowest[0]]
    sels = [_selection(b, pt) for pt in (x, y, mid)]
    assume(sels[0] == sels[1] == sels[2])
    assume(all(len(s) == 1 for sel in sels for s in sel if isinstance(s, tuple)))
    assert eval_program(p, mid) == (eval_program(p, x) + eval_program(p, y)) / 2
