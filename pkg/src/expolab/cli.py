"""Command-line entry point: ``expolab <subcommand> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage error (bad flags, missing file).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from . import bundled
from .exprlang import ProgramError, format_rational, parse_program

DEFAULT_SEED = 20240601
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

GRAMMAR_HELP = """program grammar (one statement per line, '#' comments):
  vars <name> <name> ...
  const <name> = <rational>
  constraint <affine> (<=|==|>=) <affine>
  bound <expr>      <expr> ::= <affine> | max(<expr>, ...) | min(<expr>, ...)
                             | if(<affine> <= <affine>; <expr>; <expr>)
"""


class UsageError(Exception):
    pass


def decimal_text(x: Fraction, digits: int = 20) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(x.numerator) / Decimal(x.denominator))


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2, default=str))
    else:
        print(text)


def _load(path: str):
    resolved = bundled.resolve_program_path(path)
    if resolved is None:
        raise UsageError(f"file not found: {path}")
    try:
        return resolved, parse_program(resolved.read_text())
    except ProgramError as exc:
        raise UsageError(f"{path}: {exc}\n{GRAMMAR_HELP}") from None


def _point_json(point) -> dict:
    return {k: format_rational(v) for k, v in point.items()}


def cmd_optimize(args) -> int:
    from .optimizer import maximin_optimize

    _, program = _load(args.file)
    res = maximin_optimize(program)
    payload = {
        "optimum": format_rational(res.optimum),
        "optimum_decimal": float(res.optimum),
        "witness": _point_json(res.witness),
        "branches_total": res.branches_total,
        "branches_infeasible": res.branches_infeasible,
    }
    lines = [f"optimum = {format_rational(res.optimum)} ({decimal_text(res.optimum)})"]
    if not res.attained:
        lines.append("note: supremum is not attained; the witness is a boundary limit point")
        payload["attained"] = False
    if args.witness:
        lines += [f"  {k} -> {format_rational(v)}" for k, v in res.witness.items()]
    if args.branches:
        lines.append(f"branches solved: {res.branches_total} "
                     f"(infeasible {res.branches_infeasible}, full selection space {res.branch_space})")
        lines += ["  " + d for d in res.selection.describe(program)]
        payload["winning_branch"] = list(res.selection.choices)
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _parse_assignment(items) -> dict[str, Fraction]:
    point = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"expected name=value, got {item!r}")
        point[name.strip()] = _fraction(value.strip())
    return point


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def cmd_certify(args) -> int:
    from .optimizer import certify

    path, program = _load(args.file)
    if args.point:
        if args.claimed is None:
            raise UsageError("--point needs --claimed")
        claimed, point = _fraction(args.claimed), _parse_assignment(args.point)
    else:
        wfile = Path(args.witness_file) if args.witness_file else path.with_suffix(".witness.json")
        if not wfile.is_file():
            raise UsageError(f"no witness given and {wfile} not found")
        raw = json.loads(wfile.read_text())
        claimed = _fraction(args.claimed or raw["claimed"])
        point = {k: Fraction(v) for k, v in raw["point"].items()}
    missing = set(program.variables) - set(point)
    if missing:
        raise UsageError(f"point does not assign {sorted(missing)}")
    cert = certify(program, claimed, point)
    payload = {
        "feasible": cert.feasible,
        "violated": [str(c) for c in cert.violated],
        "value": format_rational(cert.value),
        "claimed": format_rational(cert.claimed),
        "attains": cert.attains,
    }
    text = (f"feasible: {cert.feasible}\nvalue: {format_rational(cert.value)}\n"
            f"attains {format_rational(cert.claimed)}: {cert.attains}")
    if cert.violated:
        text += "\nviolated:\n" + "\n".join(f"  {c}" for c in cert.violated)
    _emit(args, payload, text)
    return EXIT_OK if cert.feasible and cert.attains else EXIT_FAIL


def cmd_tau(args) -> int:
    from .nt.tau import tau_table

    if args.n < 1:
        raise UsageError("n must be >= 1")
    value = tau_table(args.n).tau[args.n]
    _emit(args, {"n": args.n, "tau": str(value)}, str(value))
    return EXIT_OK


def cmd_lambda(args) -> int:
    from .nt.tau import tau_table

    if args.n < 1:
        raise UsageError("n must be >= 1")
    value = float(tau_table(args.n).lam[args.n])
    _emit(args, {"n": args.n, "lambda": value}, repr(value))
    return EXIT_OK


def cmd_kloosterman(args) -> int:
    from .nt.kloosterman import kloosterman

    try:
        value = kloosterman(args.m, args.n, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, {"m": args.m, "n": args.n, "q": args.q, "S": value}, repr(value))
    return EXIT_OK


def cmd_weight(args) -> int:
    from .nt.weight import bump_weight

    value = float(bump_weight(args.x))
    _emit(args, {"x": args.x, "W": value}, repr(value))
    return EXIT_OK


def cmd_weight_fourier(args) -> int:
    from .nt.weight import QuadratureError, bump_fourier

    try:
        value = bump_fourier(args.y, args.tol)
    except QuadratureError as exc:
        _emit(args, {"y": args.y, "error": str(exc), "achieved": exc.achieved}, str(exc))
        return EXIT_FAIL
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, {"y": args.y, "re": value.real, "im": value.imag},
          f"{value.real!r} {'+' if value.imag >= 0 else '-'} {abs(value.imag)!r}i")
    return EXIT_OK


def _sum_params(args, **scales):
    from .sums.params import SumParams, parse_sign

    try:
        return SumParams(args.q, parse_sign(args.sign), **scales)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _table_for(*scales):
    from .nt.tau import tau_table

    return tau_table(max(2, math.ceil(2 * max(scales))))


def cmd_verify_epm(args) -> int:
    from .sums.epm import e_pm, e_pm_chardetect

    p = _sum_params(args, M=args.m, N=args.n)
    table = _table_for(args.m)
    a, b = e_pm(p, table), e_pm_chardetect(p, table)
    scale = max(abs(a.value), abs(b.value))
    rel = abs(a.value - b.value) / scale if scale else 0.0
    ok = rel <= args.tol
    payload = {"bucket": a.value, "chardetect": b.value, "relative_gap": rel, "tol": args.tol,
               "terms": a.terms, "s1": a.parts["s1"], "s2": a.parts["s2"], "pass": ok}
    _emit(args, payload, f"E (bucketing)          = {a.value!r}\n"
                         f"E (character detection)= {b.value!r}\n"
                         f"relative gap {rel:.2e} -> {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_poisson(args) -> int:
    from .sums.cpm import c_pm, c_pm_poisson

    p = _sum_params(args, M=args.m, N1=args.n1, N2=args.n2)
    table = _table_for(args.m)
    direct = c_pm(p, table)
    dual = c_pm_poisson(p, table, k_cut=args.kcut, tol=args.tol)
    gap = abs(direct.value - dual.value)
    ok = gap <= max(1e-6, 1e-6 * abs(direct.value))
    payload = {
        "direct": direct.value, "poisson_re": dual.value.real, "poisson_im": dual.value.imag,
        "gap": gap, "k_cut": dual.parts["k_cut"], "tail_bound": dual.error_estimate,
        "tail_flagged": dual.flagged, "degenerate_re": dual.parts["degenerate"].real,
        "k0_re": dual.parts["k0"].real, "pass": ok,
    }
    text = (f"C (direct)  = {direct.value!r}\nC (Poisson) = {dual.value.real!r} "
            f"(imag {dual.value.imag:.1e})\ngap {gap:.2e}, k_cut {dual.parts['k_cut']}, "
            f"tail bound {dual.error_estimate:.2e}{' (exceeds tol)' if dual.flagged else ''}"
            f" -> {'PASS' if ok else 'FAIL'}")
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_wilton(args) -> int:
    import numpy as np

    from .nt.tau import tau_table
    from .sums.wilton import default_alpha_grid, wilton_scan

    if args.nmax < 1 or args.grid < 1:
        raise UsageError("--nmax and --grid must be positive")
    if args.grid == 256:
        alphas = default_alpha_grid()
    else:
        alphas = (np.arange(args.grid) + math.sqrt(2) - 1) / args.grid
    scales = [2**k for k in range(int(math.log2(args.nmax)) + 1)]
    r = wilton_scan(scales, alphas, tau_table(args.nmax))
    payload = {"R": {str(k): v for k, v in r.items()}, "grid": int(len(alphas))}
    _emit(args, payload, "\n".join(f"N = {n:>7d}  R(N) = {v:.4f}" for n, v in r.items()))
    return EXIT_OK


def cmd_scan(args) -> int:
    from .sums.params import parse_sign
    from .sums.scan import e_bound_scan

    if args.what != "e-bound":
        raise UsageError(f"unknown scan {args.what!r}")
    try:
        rows = e_bound_scan(args.q, args.total, parse_sign(args.sign))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = "\n".join(f"M={r['M']:>6d} N={r['N']:>6d}  |E|={r['abs_E']:.3e}  "
                     f"sqrt(MN)/q={r['trivial_shape']:.3e}  ratio={r['ratio']:.3f}" for r in rows)
    _emit(args, {"rows": rows}, text)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    from .reproduce import CRITERIA, reproduce

    unknown = [k for k in args.only or () if k not in CRITERIA]
    if unknown:
        raise UsageError(f"unknown criteria {unknown}; choose from {list(CRITERIA)}")
    results = reproduce(Path(args.programs) if args.programs else None, args.only)
    ok = all(r.passed for r in results)
    payload = {
        "seed": args.seed,
        "pass": ok,
        "criteria": [{"key": r.key, "title": r.title, "pass": r.passed, "detail": r.detail}
                     for r in results],
    }
    width = max(len(r.title) for r in results)
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.title:<{width}}  {r.seconds:6.1f}s  {r.detail}"
             for r in results]
    lines.append(f"overall: {'PASS' if ok else 'FAIL'}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="expolab", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter,
                                     epilog=GRAMMAR_HELP)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=int(os.environ.get("SEED", DEFAULT_SEED)),
                        help=f"seed for randomized suites (env SEED, default {DEFAULT_SEED})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("optimize", parents=[common], help="solve a maximin program exactly")
    p.add_argument("file")
    p.add_argument("--witness", action="store_true", help="print the maximizing point")
    p.add_argument("--branches", action="store_true", help="print branch statistics")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("certify", parents=[common], help="check a claimed optimum and point")
    p.add_argument("file")
    p.add_argument("--claimed", help="claimed value p/q")
    p.add_argument("--point", nargs="+", metavar="NAME=VALUE")
    p.add_argument("--witness-file", help="JSON witness (default: <file>.witness.json)")
    p.set_defaults(func=cmd_certify)

    for name, func, helptext in (("tau", cmd_tau, "Ramanujan tau(n)"),
                                 ("lambda", cmd_lambda, "tau(n) / n^(11/2)")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("n", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("kloosterman", parents=[common], help="S(m, n; q) for an odd prime q")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_kloosterman)

    p = sub.add_parser("weight", parents=[common], help="the bump weight W(x)")
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser("weight-fourier", parents=[common], help="W^(y) by adaptive quadrature")
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_weight_fourier)

    p = sub.add_parser("verify-epm", parents=[common], help="E+- two ways")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--sign", required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_verify_epm)

    p = sub.add_parser("verify-poisson", parents=[common], help="C+- directly and after Poisson summation")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n1", type=float, required=True)
    p.add_argument("--n2", type=float, required=True)
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--sign", required=True)
    p.add_argument("--kcut", type=int, default=None, help="default: smallest power of 2 meeting --tol")
    p.add_argument("--tol", type=float, default=1e-8, help="target for the k-tail bound")
    p.set_defaults(func=cmd_verify_poisson)

    p = sub.add_parser("wilton", parents=[common], help="normalized sup of twisted lambda sums")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--grid", type=int, default=256)
    p.set_defaults(func=cmd_wilton)

    p = sub.add_parser("scan", parents=[common], help="diagnostic scans")
    p.add_argument("what", choices=["e-bound"])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--total", type=float, required=True, help="budget for M * N")
    p.add_argument("--sign", default="+")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("reproduce", parents=[common], help="run the full acceptance battery")
    p.add_argument("--programs", help="directory overriding the bundled .opt files")
    p.add_argument("--only", nargs="+", metavar="CRITERION")
    p.set_defaults(func=cmd_reproduce)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
