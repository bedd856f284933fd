"""Command-line front end.

Every command prints one report to stdout.  Exit status: 0 when the command
ran (whatever the mathematical verdict), 2 for unreadable input or unmet
preconditions, 3 when an enumeration guard is exceeded, 4 when a theorem
check finds a violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .commutator import commutator_report, in_commutant, is_projector, is_unicellular
from .core import MaxMatrix, Tolerance, conjugate, oplus
from .errors import (
    DimensionMismatch,
    EmptyFamily,
    NotFactorable,
    NotInCommutant,
    NotTriangularizable,
    ParseError,
    PreconditionFailed,
    TheoremViolation,
    TooLarge,
)
from .graph import digraph_of, support_chain, topological_order
from .harness import check_theorems
from .matrix_io import load_matrix
from .triangularize import is_nilpotent, nilpotency_index, simultaneously_triangularize
from .tropical import (
    GRID_POINTS,
    char_poly,
    default_grid,
    factor_char_poly,
    identity_dominance,
    is_diagonally_dominant_pair,
    tdet,
    tdet_bruteforce,
)

EXIT_OK, EXIT_INPUT, EXIT_GUARD, EXIT_VIOLATION = 0, 2, 3, 4


def make_report(command, inputs, verdict, witness=None, obstruction=None, details=None) -> dict:
    return {
        "command": command,
        "inputs": list(inputs),
        "verdict": verdict,
        "witness": witness,
        "obstruction": obstruction,
        "details": details or {},
    }


def format_report(report: dict, fmt: str = "structured") -> str:
    if fmt == "structured":
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    lines = [f"{key}: {json.dumps(report[key], sort_keys=True, ensure_ascii=False)}" for key in sorted(report)]
    return "\n".join(lines) + "\n"


def _tri_report(command, paths, family):
    res = simultaneously_triangularize(family)
    if res:
        P = res.witness
        details = {
            "order": [v + 1 for v in P.order],
            "conjugated": [conjugate(M, P).tolist() for M in family],
        }
        return make_report(command, paths, True, witness=P.one_based(), details=details)
    return make_report(command, paths, False, obstruction=[v + 1 for v in res.obstruction])


def cmd_triangularize(args, mats, tol, grid):
    return _tri_report(args.command, args.matrices, mats)


def cmd_commutator(args, mats, tol, grid):
    A, B = mats
    rep = commutator_report(A, B)
    details = {"nilpotent": rep.nilpotent_C, "AC_zero": rep.AC_zero, "BC_zero": rep.BC_zero}
    return make_report(args.command, args.matrices, rep.C.tolist(), details=details)


def cmd_nilpotent(args, mats, tol, grid):
    (A,) = mats
    return make_report(args.command, args.matrices, is_nilpotent(A), details={"index": nilpotency_index(A)})


def cmd_projector(args, mats, tol, grid):
    (A,) = mats
    return make_report(args.command, args.matrices, is_projector(A, tol))


def cmd_unicellular(args, mats, tol, grid):
    (A,) = mats
    verdict = is_unicellular(A)
    details = {}
    if verdict:
        P = topological_order(digraph_of(A))
        details["order"] = [v + 1 for v in P.order]
        details["support_chain"] = [sorted(v + 1 for v in s) for s in support_chain(P).sets]
        return make_report(args.command, args.matrices, True, witness=P.one_based(), details=details)
    return make_report(args.command, args.matrices, False)


def cmd_commutant(args, mats, tol, grid):
    X, *family = mats
    return make_report(args.command, args.matrices, in_commutant(X, family, tol))


def cmd_tdet(args, mats, tol, grid):
    (A,) = mats
    res = tdet_bruteforce(A) if args.bruteforce else tdet(A)
    details = {"argmax": res.argmax.one_based(), "method": "bruteforce" if args.bruteforce else "assignment"}
    return make_report(args.command, args.matrices, res.value, details=details)


def cmd_charpoly(args, mats, tol, grid):
    p = char_poly(*mats)
    return make_report(args.command, args.matrices, [[l, m, c] for l, m, c in p.terms()])


def cmd_factor(args, mats, tol, grid):
    try:
        f = factor_char_poly(*mats, tol=tol, grid=grid)
    except NotFactorable as exc:
        return make_report(args.command, args.matrices, False, details={"reason": str(exc)})
    return make_report(args.command, args.matrices, True, details={"factors": [list(ab) for ab in f.factors]})


def cmd_dominance(args, mats, tol, grid):
    A, B = mats
    S = oplus(A, B)
    diag = 1.0
    for x in S.diagonal().tolist():
        diag *= x
    details = {"tdet": tdet(S).value, "diagonal_product": diag}
    return make_report(args.command, args.matrices, identity_dominance(A, B, tol), details=details)


def cmd_diagdom(args, mats, tol, grid):
    P = is_diagonally_dominant_pair(*mats)
    if P is None:
        return make_report(args.command, args.matrices, False)
    return make_report(args.command, args.matrices, True, witness=P.one_based())


def cmd_check_theorems(args, mats, tol, grid):
    A, B = mats
    result = check_theorems(A, B, seed=args.seed, samples=args.samples, tol=tol, grid=grid)
    return make_report(args.command, args.matrices, result["violations"] == 0, details=result)


# name -> (handler, min matrices, max matrices or None, help)
COMMANDS = {
    "triangularize": (cmd_triangularize, 1, 1, "decide triangularizability of one matrix"),
    "simtri": (cmd_triangularize, 1, None, "decide simultaneous triangularizability of a family"),
    "commutator": (cmd_commutator, 2, 2, "max commutator AB max BA"),
    "nilpotent": (cmd_nilpotent, 1, 1, "decide nilpotency"),
    "projector": (cmd_projector, 1, 1, "decide idempotency A A = A"),
    "unicellular": (cmd_unicellular, 1, 1, "decide unicellularity"),
    "commutant": (cmd_commutant, 2, None, "is X (first file) in the commutant of the rest"),
    "tdet": (cmd_tdet, 1, 1, "tropical determinant"),
    "charpoly": (cmd_charpoly, 2, 2, "characteristic polynomial of a pair"),
    "factor": (cmd_factor, 2, 2, "linear factorization of the pair polynomial"),
    "dominance": (cmd_dominance, 2, 2, "identity-permutation dominance of tdet(A max B)"),
    "diagdom": (cmd_diagdom, 2, 2, "search a diagonally dominant relabeling"),
    "check-theorems": (cmd_check_theorems, 2, 2, "run all theorem checks on a pair"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["plain", "structured"], default="structured")
    common.add_argument("--rel-eps", type=float, default=Tolerance.rel_eps)
    common.add_argument("--abs-eps", type=float, default=Tolerance.abs_eps)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--grid-points", type=int, default=GRID_POINTS)

    parser = argparse.ArgumentParser(prog="maxtri", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, lo, hi, help_) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("matrices", nargs="+" if hi is None or hi > 1 or lo > 1 else 1, metavar="FILE")
        if name == "tdet":
            p.add_argument("--bruteforce", action="store_true", help="enumerate all permutations")
        if name == "check-theorems":
            p.add_argument("--samples", type=int, default=8, help="neighbourhood size")
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    handler, lo, hi, _ = COMMANDS[args.command]
    count = len(args.matrices)
    if count < lo or (hi is not None and count > hi):
        expected = f"{lo}" if lo == hi else f"at least {lo}" if hi is None else f"{lo}-{hi}"
        print(f"maxtri {args.command}: expected {expected} matrix files, got {count}", file=err)
        return EXIT_INPUT
    try:
        tol = Tolerance(args.rel_eps, args.abs_eps)
        if args.grid_points < 0:
            raise ValueError("--grid-points must be nonnegative")
        grid = default_grid(points=args.grid_points)
        mats: list[MaxMatrix] = []
        for path in args.matrices:
            try:
                mats.append(load_matrix(path))
            except ParseError as exc:
                raise ParseError(f"{path}: {exc}") from None
        report = handler(args, mats, tol, grid)
    except TooLarge as exc:
        print(f"maxtri {args.command}: {exc}", file=err)
        return EXIT_GUARD
    except TheoremViolation as exc:
        print(f"maxtri {args.command}: theorem violation: {exc}", file=err)
        return EXIT_VIOLATION
    except (
        OSError,
        ParseError,
        DimensionMismatch,
        EmptyFamily,
        PreconditionFailed,
        NotTriangularizable,
        NotInCommutant,
        ValueError,
    ) as exc:
        print(f"maxtri {args.command}: {exc}", file=err)
        return EXIT_INPUT
    out.write(format_report(report, args.format))
    if args.command == "check-theorems" and report["details"]["violations"]:
        return EXIT_VIOLATION
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
