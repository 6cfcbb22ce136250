"""Command-line verification harness: ``qsuper <command> [flags]``."""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import acceptance
from .extension_sl22 import (
    ExtensionError,
    check_extension_relations,
    check_P_eigenvalue,
    check_qc2,
    check_vector_rep_oscillators,
    check_vell,
    pi_x_dual,
    vell_point,
)
from .pairing import pair_words, parse_word
from .pbw import check_orthogonality, check_root_pairing
from .perk_schultz import (
    check_braid,
    check_construction,
    check_qybe,
    check_transpose_identity,
    rmatrix_explicit,
)
from .reps import (
    COMPLEX,
    EXACT,
    RepError,
    check_antipode,
    check_dj_relations,
    check_root_vector_induction,
    check_rtt,
    check_weight_relations,
    check_weights,
    in_backend,
    named_rep,
)
from .scalars import format_scalar
from .universal_r import (
    check_vector_r_matrix,
    check_rplus_forms,
    check_braiding,
    numeric_ybe_crosscheck,
    r_eval,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _rep(args, name):
    try:
        return in_backend(named_rep(*args.size, name), args.backend, args.seed)
    except RepError as exc:
        _usage(args, str(exc))


def _usage(args, message):
    args.parser.error(message)


# each command returns (reports, extra text lines)

def cmd_qybe(args):
    M, N = args.size
    return [check_qybe(M, N), check_braid(M, N), check_construction(M, N), check_transpose_identity(M, N)], []


def cmd_rmatrix_dump(args):
    M, N = args.size
    mat = rmatrix_explicit(M, N)
    if args.json:
        return [], [json.dumps({"schema": 1, "M": M, "N": N, "rmatrix": mat.to_json()})]
    lines = [f"R for (M,N)=({M},{N}), {len(mat.entries)} nonzero entries; row/col index = n*i + j (0-based)"]
    for (i, j), v in sorted(mat.entries.items()):
        lines.append(f"  ({i},{j}) {format_scalar(v)}")
    return [], lines


def cmd_rtt_check(args):
    rep = _rep(args, args.rep)
    reports = [check_rtt(rep, args.tol), check_weights(rep, args.tol), check_weight_relations(rep, args.tol)]
    if args.backend == EXACT:
        reports.append(check_antipode(rep))
    return reports, []


def cmd_dj_check(args):
    rep = _rep(args, args.rep)
    return [check_dj_relations(rep, args.tol), check_root_vector_induction(rep, args.tol)], []


def cmd_pairing(args):
    M, N = args.size
    if args.left is None and args.right is None:
        return [check_root_pairing(M, N)], []
    if args.left is None or args.right is None:
        _usage(args, "--left and --right must be given together")
    try:
        value = pair_words(M, N, parse_word(args.left), parse_word(args.right), args.dialect, args.order)
    except ValueError as exc:
        _usage(args, str(exc))
    if args.json:
        return [], [json.dumps({"schema": 1, "M": M, "N": N, "left": args.left, "right": args.right,
                                "value": format_scalar(value)})]
    return [], [f"phi({args.left}, {args.right}) = {format_scalar(value)}"]


def cmd_orthogonality(args):
    return [check_orthogonality(*args.size, cap=args.cap)], []


def cmd_universal_r(args):
    A, B = _rep(args, args.left or "vector"), _rep(args, args.right or "vector")
    reports = [check_rplus_forms(A, B, args.tol)]
    lines = []
    if args.dump and reports[0].passed:
        ev = r_eval(A, B)
        fmt = format_scalar if args.backend == EXACT else (lambda z: f"{z:.12g}")
        lines.append(f"R on {A.label} (x) {B.label}: {len(ev.total.entries)} nonzero entries")
        lines += [f"  ({i},{j}) {fmt(v)}" for (i, j), v in sorted(ev.total.entries.items())]
    return reports, lines


def cmd_braiding(args):
    names = args.reps or ["vector"] * 3
    A, B, C = (_rep(args, n) for n in names)
    reports = [check_braiding(A, B, C, args.tol)]
    if args.backend == COMPLEX:
        reports.append(numeric_ybe_crosscheck(*args.size, seed=args.seed, tol=args.tol))
    return reports, []


def cmd_vector_r_matrix(args):
    return [check_vector_r_matrix(*args.size)], []


def cmd_extension_check(args):
    reports = [check_extension_relations(), check_qc2(), check_P_eigenvalue(), check_vector_rep_oscillators()]
    dual = pi_x_dual()
    reports += [check_extension_relations(dual), check_qc2(dual)]
    return reports, []


def cmd_vell_check(args):
    try:
        point = vell_point(args.ell, args.x)
        return [check_vell(args.ell, args.x, args.tol, point)], []
    except ExtensionError as exc:
        _usage(args, str(exc))


def _run_criterion(name):
    return acceptance.run_criterion(name)


def cmd_report_all(args):
    names = sorted(acceptance.CRITERIA)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_run_criterion, names))
    else:
        reports = [_run_criterion(n) for n in names]
    return reports, []


COMMANDS = {
    "qybe": (cmd_qybe, "quantum Yang-Baxter, braid relation and R-matrix construction"),
    "rmatrix-dump": (cmd_rmatrix_dump, "print the R-matrix entries"),
    "rtt-check": (cmd_rtt_check, "RTT relations, weights and antipode on a representation"),
    "dj-check": (cmd_dj_check, "Drinfeld-Jimbo relations on a representation"),
    "pairing": (cmd_pairing, "evaluate the Hopf pairing on two words"),
    "orthogonality": (cmd_orthogonality, "PBW orthogonality against the closed form"),
    "universal-r": (cmd_universal_r, "evaluate the universal R-matrix on two representations"),
    "thm41": (cmd_braiding, "Yang-Baxter, intertwining and invertibility of c o R"),
    "example42": (cmd_vector_r_matrix, "universal R on vector (x) vector against the R-matrix"),
    "extension-check": (cmd_extension_check, "exact suite for the quasi-central extension"),
    "vell-check": (cmd_vell_check, "numeric suite on the root-of-unity quotient"),
    "report-all": (cmd_report_all, "run every acceptance criterion"),
}


def _size(args, parser):
    M, N = args.size
    if M < 0 or N < 0 or not 1 <= M + N <= 4:
        parser.error(f"--size needs M, N >= 0 and 1 <= M+N <= 4, got {M} {N}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsuper", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--tol", type=float, default=1e-9, help="tolerance for numeric comparisons")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized points")
    common.add_argument("--jobs", type=int, default=1, help="parallel workers")
    sized = argparse.ArgumentParser(add_help=False)
    sized.add_argument("--size", nargs=2, type=int, metavar=("M", "N"), default=[1, 1])
    backend = argparse.ArgumentParser(add_help=False)
    backend.add_argument("--backend", choices=[EXACT, COMPLEX], default=EXACT)
    sub = parser.add_subparsers(dest="command", required=True)
    parsers = {}
    for name, (_, help_text) in COMMANDS.items():
        parents = [common]
        if name not in ("extension-check", "vell-check", "report-all"):
            parents.append(sized)
        if name in ("rtt-check", "dj-check", "universal-r", "thm41"):
            parents.append(backend)
        parsers[name] = sub.add_parser(name, parents=parents, help=help_text)
        parsers[name].set_defaults(parser=parsers[name])
    for name in ("rtt-check", "dj-check"):
        parsers[name].add_argument("--rep", default="vector", help="vector, vector^2 or vector^3")
    parsers["pairing"].add_argument("--left", help="upper word, e.g. 'a12' or 's11^-1 s12'")
    parsers["pairing"].add_argument("--right", help="lower word, e.g. 'b21' or 't21 t11^-1'")
    parsers["pairing"].add_argument("--dialect", choices=["rtt", "dj"], default="rtt")
    parsers["pairing"].add_argument("--order", choices=["b_first", "a_first"], default="b_first")
    parsers["orthogonality"].add_argument("--cap", type=int, default=None, help="maximal total degree")
    parsers["universal-r"].add_argument("--left", help="first representation (default vector)")
    parsers["universal-r"].add_argument("--right", help="second representation (default vector)")
    parsers["universal-r"].add_argument("--dump", action="store_true", help="print the entries of R")
    parsers["thm41"].add_argument("--reps", nargs=3, metavar="REP")
    parsers["vell-check"].add_argument("--ell", type=int, default=2)
    parsers["vell-check"].add_argument("--x", type=float, default=1.0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub_parser = args.parser
    if hasattr(args, "size"):
        _size(args, sub_parser)
    if args.jobs < 1:
        sub_parser.error("--jobs must be positive")
    if args.tol <= 0:
        sub_parser.error("--tol must be positive")
    if getattr(args, "cap", None) is not None and args.cap < 0:
        sub_parser.error("--cap must be non-negative")
    if args.command == "vell-check" and args.ell < 1:
        sub_parser.error("--ell must be positive")
    func, _ = COMMANDS[args.command]
    reports, lines = func(args)
    reports = sorted(reports, key=lambda r: (r.check_id, json.dumps(r.parameters, sort_keys=True, default=str)))
    if args.json and reports:
        print(json.dumps({"schema": 1, "reports": [r.to_json() for r in reports]}, indent=2, default=str))
    else:
        for r in reports:
            print(r.line())
        for line in lines:
            print(line)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
