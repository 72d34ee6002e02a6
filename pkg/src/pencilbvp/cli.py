"""Command-line interface: ``pencilbvp analyze|solve|optimal|check FILE``.

Exit codes: 0 success, 1 usage, 2 parse or dimension error, 3 method
precondition violated, 4 oracle mismatch, 5 internal consistency failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import io
from .bvp import Classification, analyze, solve_unique
from .errors import (
    ConsistencyError,
    DimensionError,
    HorizonError,
    ParseError,
    PreconditionError,
    UsageError,
)
from .optimal import OptimalMethod, optimal_bvp
from .oracle import Agreement, compare
from .pencil import classify_pencil, kronecker_structure, normal_rank
from .scalar import parse_scalar

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_MISMATCH = 4
EXIT_INTERNAL = 5

_METHODS = {
    "lsq": OptimalMethod.LEAST_SQUARES,
    "tikhonov": OptimalMethod.REGULARIZED,
    "pinv": OptimalMethod.PSEUDOINVERSE,
    "minnorm": OptimalMethod.MINIMUM_NORM,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _nonnegative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _rational(text):
    try:
        value = parse_scalar(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not isinstance(value, Fraction):
        raise argparse.ArgumentTypeError("theta must be real")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pencilbvp", description="Exact boundary value problems for singular "
                                                    "discrete-time systems F Y(k+1) = G Y(k).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="Kronecker structure of the pencil sF - G")
    p.add_argument("file")

    p = sub.add_parser("solve", help="classify the boundary value problem and solve it")
    p.add_argument("file")
    p.add_argument("--trajectory-to", type=int, metavar="K", help="emit Y_k for k = k0..K")
    p.add_argument("--format", choices=("document", "csv"), default="document")

    p = sub.add_parser("optimal", help="optimal state for inconsistent or underdetermined problems")
    p.add_argument("file")
    p.add_argument("--method", choices=sorted(_METHODS), required=True)
    p.add_argument("--theta", type=_rational, metavar="R", help="regularizer scale (default 1/1000)")
    p.add_argument("--E", dest="E_file", metavar="FILE", help="regularizer matrix file")
    p.add_argument("--trajectory-to", type=int, metavar="K", help="emit the optimal Y_k up to K")

    p = sub.add_parser("check", help="compare with the brute-force unrolled system")
    p.add_argument("file")
    p.add_argument("--horizon", type=_nonnegative, metavar="H")
    p.add_argument("--kn", type=int, metavar="N", help="override kN from the file")
    return parser


def _analyze(args, out):
    pf = io.load_problem(args.file)
    structure = kronecker_structure(pf.pencil)
    doc = io.structure_doc(pf.pencil, structure, classify_pencil(pf.pencil), normal_rank(pf.pencil))
    out.write(io.dumps(doc))
    return EXIT_OK


def _solve(args, out):
    problem = io.load_problem(args.file).require_problem()
    analysis = analyze(problem)
    res = analysis.resolution
    traj = None
    if args.trajectory_to is not None:
        if res.classification is not Classification.UNIQUE:
            raise PreconditionError(
                f"a trajectory needs a Unique problem, this one is {res.classification.value}"
            )
        traj = solve_unique(problem, analysis.finite, res, args.trajectory_to)
    if args.format == "csv":
        if traj is None:
            raise UsageError("--format csv needs --trajectory-to")
        out.write(io.trajectory_csv(traj))
        return EXIT_OK
    doc = io.resolution_doc(analysis)
    doc["trajectory"] = None if traj is None else io.trajectory_doc(traj)
    out.write(io.dumps(doc))
    return EXIT_OK


def _optimal(args, out):
    problem = io.load_problem(args.file).require_problem()
    analysis = analyze(problem)
    method = _METHODS[args.method]
    E = io.load_matrix(args.E_file) if args.E_file else None
    if method is not OptimalMethod.REGULARIZED and (E is not None or args.theta is not None):
        raise UsageError("--theta and --E only apply to --method tikhonov")
    sol = optimal_bvp(problem, analysis.finite, analysis.resolution, method, E=E, theta=args.theta)
    doc = io.resolution_doc(analysis)
    doc["optimal"] = io.optimal_doc(sol)
    if args.trajectory_to is not None:
        doc["trajectory"] = io.trajectory_doc(sol.trajectory(args.trajectory_to))
    out.write(io.dumps(doc))
    return EXIT_OK


def _check(args, out):
    problem = io.load_problem(args.file, kN_override=args.kn).require_problem()
    analysis = analyze(problem)
    report = compare(analysis, args.horizon)
    doc = {"classification": analysis.resolution.classification.value,
           "oracle": io.oracle_doc(report)}
    out.write(io.dumps(doc))
    return EXIT_MISMATCH if report.agreement is Agreement.MISMATCH else EXIT_OK


_COMMANDS = {"analyze": _analyze, "solve": _solve, "optimal": _optimal, "check": _check}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (UsageError, HorizonError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (ParseError, DimensionError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except PreconditionError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PRECONDITION
    except ConsistencyError as exc:
        err.write(f"internal consistency failure: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
