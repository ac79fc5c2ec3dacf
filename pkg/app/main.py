"""Command-line front end.

Run as ``python -m app.main <command> ...``. Reports are JSON on stdout (or
``--out``); logs go to stderr.
"""

import argparse
import logging
import sys
import time
from typing import Callable, Dict, List, Optional, Tuple

from sympy import primerange

from app.arith import gauss_two_k, three_squares
from app.config import get_settings
from app.errors import InvalidInputError, LocalGlobalError
from app.groups import good_places
from app.ingestion import load_context, load_instance
from app.localglobal import (
    DecisionStatus,
    counterexample_rank_n,
    global_decide,
    positive_definite_check,
    probe_assumption1,
    probe_assumption2,
    probe_proof_pattern,
    scan,
)
from app.qforms import (
    DiagonalForm,
    Place,
    almost_all_rank2_decide,
    decide_omitting_place,
    find_isotropic_vector,
    global_represents_zero,
    hilbert_symbol,
    local_profile,
    relevant_places,
)
from app.utils.formatting import (
    ReportFile,
    counterexample_to_dict,
    decision_to_dict,
    format_place,
    positive_definite_to_dict,
    probe_to_dict,
    profile_to_dict,
    scan_to_dict,
)
from app.utils.logging_utils import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_UNSOLVABLE = 3
EXIT_UNCERTIFIED = 4
EXIT_INTERNAL = 5

# (exit code, report fields)
Outcome = Tuple[int, dict]


def cmd_qform(args) -> Outcome:
    form = DiagonalForm(tuple(args.coeffs))
    results = {
        "form": profile_to_dict(local_profile(form)),
        "global": global_represents_zero(form),
    }
    witness = find_isotropic_vector(form)
    results["witness"] = list(witness) if witness else None
    if form.rank == 2:
        results["almost_all_places"] = almost_all_rank2_decide(*form.coefficients)
    if args.omit is not None:
        omitted = Place.parse(args.omit)
        results["omitting"] = {"place": format_place(omitted), "global": decide_omitting_place(form, omitted)}
    return EXIT_OK, {"results": results}


def cmd_decide(args) -> Outcome:
    instance = load_instance(args.instance)
    decision = global_decide(instance)
    code = {
        DecisionStatus.SOLVABLE: EXIT_OK,
        DecisionStatus.UNSOLVABLE: EXIT_UNSOLVABLE,
        DecisionStatus.INDEPENDENT_UNCERTIFIED: EXIT_UNCERTIFIED,
    }[decision.status]
    return code, {"instance": instance.summary(), "results": decision_to_dict(decision)}


def cmd_scan(args) -> Outcome:
    instance = load_instance(args.instance)
    report = scan(instance, p_max=args.pmax, p_min=args.pmin, jobs=args.jobs)
    if report.violations:
        code = EXIT_VIOLATION
    elif report.decision.status is DecisionStatus.INDEPENDENT_UNCERTIFIED:
        code = EXIT_UNCERTIFIED
    else:
        code = EXIT_OK
    fields = {
        "instance": report.instance,
        "results": scan_to_dict(report),
        "excluded_places": list(report.excluded_places),
    }
    return code, fields


def cmd_counterexample(args) -> Outcome:
    instance = load_instance(args.instance)
    if instance.rank != 1:
        raise InvalidInputError(f"counterexample takes a single-point instance, got {instance.rank} points")
    (point,) = instance.points
    context = instance.context
    if args.prime is not None:
        places = [args.prime]
        excluded: List[int] = []
    else:
        places = good_places(context, args.pmin, args.pmax)
        excluded = _bad_places(context, args.pmin, args.pmax)
    vectors = [counterexample_to_dict(counterexample_rank_n(point, p, args.n)) for p in places]
    box = positive_definite_to_dict(positive_definite_check(point, args.n, args.box))
    fields = {
        "instance": instance.summary(),
        "results": {"n": args.n, "local": vectors, "global": box},
        "excluded_places": excluded,
    }
    return EXIT_OK, fields


def _bad_places(context, p_min: int, p_max: int) -> List[int]:
    good = set(good_places(context, p_min, p_max))
    return [int(p) for p in primerange(max(p_min, 2), p_max + 1) if int(p) not in good]


def cmd_probe(args) -> Outcome:
    if args.assumption == "2":
        context = load_context(args.instance)
        results = {"assumption": "2", "failing": probe_assumption2(context, args.pmax, args.pmin)}
        return EXIT_OK, {"instance": context.summary(), "results": results}
    instance = load_instance(args.instance)
    if args.assumption == "1":
        if args.l is None or args.pattern is None:
            raise InvalidInputError("assumption 1 needs --l and --pattern")
        report = probe_assumption1(instance.points, args.l, args.pattern, args.pmax, args.pmin)
        results = probe_to_dict(report)
    else:
        results = probe_to_dict(probe_proof_pattern(instance, args.pmax, args.pmin))
    results["assumption"] = args.assumption
    return EXIT_OK, {"instance": instance.summary(), "results": results}


def cmd_three_squares(args) -> Outcome:
    if args.two_k:
        a, b, c = gauss_two_k(args.n)
        return EXIT_OK, {"results": {"k": args.n, "two_k": [a, b, c]}}
    if args.n < 0:
        raise InvalidInputError("n must be nonnegative")
    found = three_squares(args.n)
    return EXIT_OK, {"results": {"n": args.n, "squares": list(found) if found else None}}


def cmd_hilbert(args) -> Outcome:
    if args.a == 0 or args.b == 0:
        raise InvalidInputError("Hilbert symbols need nonzero arguments")
    if args.place is not None:
        places = [Place.parse(args.place)]
    else:
        places = relevant_places(DiagonalForm((args.a, args.b)))
    symbols = {format_place(v): hilbert_symbol(args.a, args.b, v) for v in places}
    return EXIT_OK, {"results": {"a": args.a, "b": args.b, "symbols": symbols}}


COMMANDS: Dict[str, Callable] = {
    "qform": cmd_qform,
    "decide": cmd_decide,
    "scan": cmd_scan,
    "counterexample": cmd_counterexample,
    "probe": cmd_probe,
    "three-squares": cmd_three_squares,
    "hilbert": cmd_hilbert,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--jobs", type=int, default=None, help="worker processes for scans")
    common.add_argument("--log-level", dest="log_level", default=None, help="logging level (default from settings)")
    common.add_argument("--no-timing", dest="no_timing", action="store_true", help="omit the timing field")

    parser = argparse.ArgumentParser(
        prog="localglobal",
        description="Local-global tools for quadratic forms on Mordell-Weil type groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qform", parents=[common], help="decide a diagonal form of rank 2 or 3")
    p.add_argument("--coeffs", type=int, nargs="+", required=True)
    p.add_argument("--omit", default=None, help="also decide while ignoring this place ('inf' or a prime)")

    p = sub.add_parser("decide", parents=[common], help="global decision for an instance")
    p.add_argument("instance")

    p = sub.add_parser("scan", parents=[common], help="local solvability at every good prime in a range")
    p.add_argument("instance")
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--pmin", type=int, default=2)

    p = sub.add_parser("counterexample", parents=[common], help="rank >= 4 local solutions without a global one")
    p.add_argument("instance")
    p.add_argument("--n", type=int, required=True)
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--prime", type=int)
    where.add_argument("--pmax", type=int)
    p.add_argument("--pmin", type=int, default=2)
    p.add_argument("--box", type=int, default=None, help="max-norm of the global box check")

    p = sub.add_parser("probe", parents=[common], help="empirical checks of the standing assumptions")
    p.add_argument("instance")
    p.add_argument("--assumption", choices=["1", "2", "proof"], required=True)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--pattern", type=int, nargs="+", default=None)
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--pmin", type=int, default=2)

    p = sub.add_parser("three-squares", parents=[common], help="write n as a sum of three squares")
    p.add_argument("n", type=int)
    p.add_argument("--two-k", dest="two_k", action="store_true", help="write 2n as 2a^2 + b^2 + c^2 + 1 instead")

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert symbols (a, b)_v")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--place", default=None, help="'inf' or a prime; default: every relevant place")
    return parser


def command_echo(argv: List[str]) -> List[str]:
    """argv without --jobs and --out, which must not change the report."""
    echo, skip = [], False
    for token in argv:
        if skip:
            skip = False
        elif token in ("--jobs", "--out"):
            skip = True
        elif not token.startswith(("--jobs=", "--out=")):
            echo.append(token)
    return echo


def _write(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    configure_logging(args.log_level or get_settings().log_level)
    started = time.perf_counter()
    try:
        code, fields = COMMANDS[args.command](args)
    except ValueError as exc:
        # InvalidInputError and pydantic.ValidationError are both ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LocalGlobalError as exc:
        logger.exception("internal consistency check failed")
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    timing = None if args.no_timing else {"seconds": round(time.perf_counter() - started, 3)}
    report = ReportFile(command=command_echo(argv), timing=timing, **fields)
    try:
        _write(report.to_json(), args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    logger.debug("%s finished with exit code %d", args.command, code)
    return code


if __name__ == "__main__":
    sys.exit(main())
