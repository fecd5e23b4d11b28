"""Command-line front end.

Five subcommands over problem files (JSON objects with keys b, c, N, g and
an optional seed):

* ``classify``  -- kernel dimension, rotation data, resonant-angle membership;
* ``solve``     -- dispatch to the regime solver, print the solve report;
* ``verify``    -- residual check of a candidate solution file {"y": [...]};
* ``check``     -- run one of the three hypothesis checkers;
* ``scan``      -- classification sweep over a range of b values, CSV out.

All structured output is JSON with a fixed key layout, the tool version and
a full echo of the inputs; floats are printed with 17 significant digits so
identical runs produce byte-identical bytes. Exit codes: 0 success/pass,
1 usage, 2 file or expression parse error, 3 solver failure, 4 hypothesis
check failed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__, expr, hypotheses, oracle, reduction
from .linear import Problem, build_linear_data

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_SOLVER = 3
EXIT_HYPOTHESIS = 4


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage problems; the contract here says 1
    def error(self, message):
        raise _CliError(f"usage error: {message}", EXIT_USAGE)


# -- deterministic JSON ------------------------------------------------------


def to_json(obj, indent: int = 0) -> str:
    """JSON with floats at 17 significant digits (round-trip exact)."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{pad}  {json.dumps(str(k))}: {to_json(v, indent + 1)}'
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not len(obj):
            return "[]"
        items = [f"{pad}  {to_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return _scalar_json(obj)


def _scalar_json(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        f = float(v)
        if not math.isfinite(f):
            return json.dumps(str(f))
        return format(f, ".17g")
    return json.dumps(str(v))


def _fmt_float(v: float) -> str:
    return format(float(v), ".17g")


# -- problem files -----------------------------------------------------------


def load_problem(path: str) -> tuple[Problem, int]:
    """Read a problem file; returns the problem and its seed (default 0)."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise _CliError(f"cannot read {path}: {e}", EXIT_PARSE) from None
    except json.JSONDecodeError as e:
        raise _CliError(f"invalid JSON in {path}: {e}", EXIT_PARSE) from None
    if not isinstance(data, dict):
        raise _CliError(f"{path}: expected a JSON object", EXIT_PARSE)
    missing = {"b", "c", "N", "g"} - set(data)
    if missing:
        raise _CliError(f"{path}: missing key(s) {sorted(missing)}", EXIT_PARSE)
    try:
        problem = Problem.from_text(data["b"], data["c"], data["N"], data["g"])
    except (expr.ExprError, ValueError, TypeError) as e:
        raise _CliError(f"{path}: {e}", EXIT_PARSE) from None
    seed = data.get("seed", 0)
    if not isinstance(seed, int):
        raise _CliError(f"{path}: seed must be an integer", EXIT_PARSE)
    return problem, seed


def _echo(problem: Problem, seed: int, **flags) -> dict:
    return {
        "b": problem.b, "c": problem.c, "N": problem.N,
        "g": problem.g_text, "seed": seed, **flags,
    }


def _report_shell(command: str, problem: Problem, seed: int, **flags) -> dict:
    return {"tool": "perdiff", "version": __version__, "command": command,
            "input": _echo(problem, seed, **flags)}


# -- subcommands -------------------------------------------------------------


def _cmd_classify(args) -> int:
    problem, seed = load_problem(args.problem)
    rc = build_linear_data(problem).resonance
    in_u = None
    witness = None
    if abs(problem.b) < 2.0:
        in_u, w = hypotheses.membership_U(problem.b)
        witness = None if w is None else list(w)
    out = _report_shell("classify", problem, seed)
    out.update({
        "dim": rc.dim,
        "theta": rc.theta,
        "r_int": rc.r_int,
        "kernel_basis": [seq.tolist() for seq in rc.kernel_basis],
        "adjoint_basis": [seq.tolist() for seq in rc.adjoint_basis],
        "in_U": in_u,
        "U_witness": witness,
    })
    print(to_json(out))
    return EXIT_OK


def _cmd_solve(args) -> int:
    problem, seed = load_problem(args.problem)
    if args.seed is not None:
        seed = args.seed
    shell = _report_shell("solve", problem, seed, tol=args.tol, r=args.r,
                          radius=args.radius, grid=args.grid)
    try:
        report = reduction.solve(problem, tol=args.tol, r=args.r,
                                 radius=args.radius, grid=args.grid)
    except (reduction.SolverError, expr.DomainError) as e:
        shell.update({"error": str(e)})
        if isinstance(e, reduction.SolverError) and e.diagnostics:
            shell["diagnostics"] = e.diagnostics
        print(to_json(shell))
        return EXIT_SOLVER
    shell.update(report.as_dict())
    print(to_json(shell))
    return EXIT_OK


def _cmd_verify(args) -> int:
    problem, seed = load_problem(args.problem)
    try:
        with open(args.solution, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise _CliError(f"cannot read solution file: {e}", EXIT_PARSE) from None
    y = data.get("y") if isinstance(data, dict) else None
    if not isinstance(y, list):
        raise _CliError('solution file must be an object {"y": [...]}', EXIT_PARSE)
    if len(y) != problem.N:
        raise _CliError(
            f"solution has {len(y)} values but N={problem.N}", EXIT_PARSE)
    y = np.asarray([float(v) for v in y])
    try:
        res = float(np.max(np.abs(oracle.residual(problem, y))))
    except expr.DomainError as e:
        raise _CliError(f"cannot evaluate residual: {e}", EXIT_PARSE) from None
    passed = res <= args.tol
    out = _report_shell("verify", problem, seed, tol=args.tol,
                        solution=[float(v) for v in y])
    out.update({"residual_sup": res, "passed": passed})
    print(to_json(out))
    return EXIT_OK if passed else EXIT_SOLVER


def _cmd_check(args) -> int:
    problem, seed = load_problem(args.problem)
    if args.seed is not None:
        seed = args.seed
    shell = _report_shell("check", problem, seed, theorem=args.theorem,
                          r=args.r, zhat=args.zhat, R=args.R, grid=args.grid)
    try:
        if args.theorem == "thm1":
            report = hypotheses.check_thm1(problem, r=args.r, zhat=args.zhat,
                                           grid=args.grid, seed=seed)
        elif args.theorem == "cor":
            report = hypotheses.check_corollary(problem, R=args.R, grid=args.grid)
        else:
            report = hypotheses.check_thm2(problem, zhat=args.zhat, grid=args.grid)
    except ValueError as e:
        raise _CliError(str(e), EXIT_PARSE) from None
    shell.update(report.as_dict())
    print(to_json(shell))
    return EXIT_OK if report.overall else EXIT_HYPOTHESIS


def _cmd_scan(args) -> int:
    try:
        lo, hi, steps = args.b_range.split(":")
        lo, hi, steps = float(lo), float(hi), int(steps)
    except ValueError:
        raise _CliError("--b-range must be lo:hi:steps", EXIT_USAGE) from None
    if steps < 0:
        raise _CliError("steps must be >= 0", EXIT_USAGE)
    try:
        n_list = [int(s) for s in args.N_list.split(",") if s.strip()]
    except ValueError:
        raise _CliError("--N-list must be comma-separated integers", EXIT_USAGE) from None
    if args.c == 0.0:
        raise _CliError("c must be nonzero", EXIT_USAGE)

    lines = ["b,c,N,dim,theta,in_U,r_int,gcd"]
    bs = np.linspace(lo, hi, steps) if steps else []
    for b in bs:
        theta = math.acos(max(-1.0, min(1.0, -b / 2.0))) if abs(b) <= 2.0 else None
        in_u = None
        if abs(b) < 2.0:
            in_u, _ = hypotheses.membership_U(float(b))
        for N in n_list:
            rc = build_linear_data(Problem.from_text(b, args.c, N, "0")).resonance
            gcd = (None if rc.r_int is None else math.gcd(rc.r_int, N))
            lines.append(",".join([
                _fmt_float(b),
                _fmt_float(args.c),
                str(N),
                str(rc.dim),
                "" if theta is None else _fmt_float(theta),
                "" if in_u is None else ("true" if in_u else "false"),
                "" if rc.r_int is None else str(rc.r_int),
                "" if gcd is None else str(gcd),
            ]))
    csv_text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    return EXIT_OK


# -- entry point --------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="perdiff",
                     description="Periodic solutions of y(t+2)+b y(t+1)+c y(t)=g(t,y(t)).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="kernel dimension and resonance data")
    p.add_argument("problem")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("solve", help="compute an N-periodic solution")
    p.add_argument("problem")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--r", type=float, default=10.0,
                   help="search half-width for the one-dimensional kernel")
    p.add_argument("--radius", type=float, default=0.0,
                   help="search radius for the two-dimensional kernel (0 = auto)")
    p.add_argument("--grid", type=int, default=9,
                   help="seed grid size for the two-dimensional kernel")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="residual-check a solution file")
    p.add_argument("problem")
    p.add_argument("solution")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("check", help="verify existence-theorem hypotheses")
    p.add_argument("problem")
    p.add_argument("--theorem", choices=["thm1", "cor", "thm2"], required=True)
    p.add_argument("--r", type=float, default=10.0)
    p.add_argument("--zhat", type=float, default=1.0)
    p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--grid", type=int, default=201)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("scan", help="classification sweep over b, CSV output")
    p.add_argument("--b-range", required=True, metavar="lo:hi:steps")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--N-list", required=True, metavar="N1,N2,...")
    p.add_argument("--out", default=None, help="CSV path (stdout if omitted)")
    p.set_defaults(func=_cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _CliError as e:
        print(str(e), file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
