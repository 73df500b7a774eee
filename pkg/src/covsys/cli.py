"""Command-line front end.

Exit codes: 0 success / consistent, 1 usage or I/O error,
2 hypothesis not satisfied, 3 FALSIFIED.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .constructions import classic_cover, erdos_cover
from .cyclotomic import divisible_by_integer, exp_sum, fourier_identity_check
from .document import SystemDocument, dumps, read_system, write_document
from .errors import CovsysError
from .fuzz import THEOREMS, parse_range, run_fuzz
from .residue import (
    DEFAULT_CAP,
    constancy_window_size,
    is_cover,
    maximal_moduli,
    mean_value,
    minimal_period,
    range_and_spread,
)
from .verify import (
    Verdict,
    check_corollary_1_1,
    check_corollary_1_2,
    check_theorem_1_1,
    check_theorem_1_2,
    check_theorem_1_3,
)

EXIT_OK, EXIT_ERROR, EXIT_VACUOUS, EXIT_FALSIFIED = 0, 1, 2, 3
VERDICT_EXIT = {
    Verdict.CONSISTENT: EXIT_OK,
    Verdict.VACUOUS: EXIT_VACUOUS,
    Verdict.FALSIFIED: EXIT_FALSIFIED,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    pass


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(text)


def cmd_analyze(args):
    system = read_system(args.input)
    values, g = range_and_spread(system, args.cap)
    period = minimal_period(system, args.mod or 0, args.cap)
    top, distinct = maximal_moduli(system)
    mean = mean_value(system)
    window = constancy_window_size(system)
    cover = is_cover(system, args.cap)
    payload = {
        "k": system.k,
        "N": system.lcm,
        "mean": str(mean),
        "range": sorted(values),
        "spread": g,
        "constant": g == 0,
        "minimal_period": period,
        "period_modulus": args.mod or 0,
        "maximal_moduli": list(top),
        "maximal_moduli_distinct": distinct,
        "constancy_window": window,
        "cover": cover,
    }
    mod_note = f" (mod {args.mod})" if args.mod else ""
    text = "\n".join([
        f"system:           {system}",
        f"k:                {system.k}",
        f"N:                {system.lcm}",
        f"mean value:       {mean}",
        f"range:            {{{', '.join(map(str, sorted(values)))}}}",
        f"spread g:         {g}" + ("  (w constant)" if g == 0 else ""),
        f"minimal period:   {period}{mod_note}",
        f"maximal moduli:   {{{', '.join(map(str, top))}}}" + ("" if distinct else "  (not distinct)"),
        f"constancy window: {window}",
        f"cover:            {'yes' if cover else 'no'}",
    ])
    _emit(args, payload, text)
    return EXIT_OK


def cmd_verify(args):
    theorem = args.theorem
    need = 2 if theorem == "1.2" else 1
    if len(args.inputs) != need:
        raise UsageError(f"theorem {theorem} takes {need} input file(s), got {len(args.inputs)}")
    systems = [read_system(p) for p in args.inputs]
    if theorem in ("1.1", "1.2") and args.mod is None:
        raise UsageError(f"theorem {theorem} needs --mod")
    if theorem == "1.1":
        report = check_theorem_1_1(systems[0], args.mod, args.cap)
    elif theorem == "1.2":
        report = check_theorem_1_2(systems[0], systems[1], args.mod, args.cap)
    elif theorem == "1.3":
        report = check_theorem_1_3(systems[0], args.mod or 0, args.cap)
    elif theorem == "c1.1":
        report = check_corollary_1_1(systems[0], args.cap)
    else:
        report = check_corollary_1_2(systems[0], args.cap)
    _emit(args, report.to_dict(), report.render())
    return VERDICT_EXIT[report.verdict]


def cmd_construct(args):
    if args.kind == "erdos":
        if args.n is None:
            raise UsageError("construct erdos needs --n")
        system = erdos_cover(args.n, args.cap)
        doc = SystemDocument.from_system(system, name=f"erdos_cover({args.n})")
    else:
        system = classic_cover()
        doc = SystemDocument.from_system(system, name="classic_cover")
    summary = (f"{doc.metadata['name']}: {system.k} classes, N = {system.lcm}, "
               f"distinct moduli, verified cover")
    if args.output:
        write_document(doc, args.output)
        print(summary)
    else:
        sys.stdout.write(dumps(doc))
        print(summary, file=sys.stderr)
    return EXIT_OK


def cmd_fuzz(args):
    try:
        pool = parse_range(args.pool)
        mods = parse_range(args.mod_range)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.count < 0:
        raise UsageError("--count must be nonnegative")
    if not pool or min(pool) < 2:
        raise UsageError("--pool moduli must be >= 2")
    if args.theorem in ("1.1", "1.2") and min(mods, default=1) < 1:
        raise UsageError(f"--mod-range must be positive for theorem {args.theorem}")
    summary = run_fuzz(args.theorem, args.seed, args.count, args.k, pool, mods, args.cap)
    payload = summary.to_dict()
    text = (f"theorem {summary.theorem}, seed {summary.seed}: {summary.count} systems, "
            f"{summary.runs} checks\n"
            f"  consistent: {summary.consistent}\n"
            f"  vacuous:    {summary.vacuous}\n"
            f"  FALSIFIED:  {len(summary.falsified)}\n"
            f"  systems with hypothesis satisfied: {summary.systems_with_hypothesis}")
    if summary.skipped_over_cap:
        text += f"\n  skipped (period over cap): {summary.skipped_over_cap}"
    if summary.falsified:
        with open(args.replay, "w", encoding="utf-8") as fh:
            json.dump(summary.falsified, fh, indent=2, default=str)
        payload["replay_file"] = args.replay
        text += f"\n  counterexamples written to {args.replay}"
    _emit(args, payload, text)
    return EXIT_FALSIFIED if summary.falsified else EXIT_OK


def cmd_expsum(args):
    system = read_system(args.input)
    element = exp_sum(system, args.c, args.d)
    identity = fourier_identity_check(system, args.c, args.d, args.cap)
    N = system.lcm
    flags = {m: divisible_by_integer(element, m) for m in range(2, N + 1)}
    payload = {
        "order": element.order,
        "coefficients": list(element.coeffs),
        "element": str(element),
        "fourier_identity": identity,
        "divisible": {str(m): f for m, f in flags.items()},
    }
    lines = [
        f"alpha = {args.c}/{args.d} -> element of Z[zeta_{element.order}]",
        f"element:          {element}",
        f"coefficients:     {list(element.coeffs)}",
        f"fourier identity: {'true' if identity else 'FALSE'}",
        "divisibility:",
    ]
    lines += [f"  m={m}: {'yes' if f else 'no'}" for m, f in flags.items()]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="covsys", description="Covering functions of residue-class systems.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                       help="refuse dense enumeration above this period (default 10^7)")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("analyze", help="covering-function report for one system")
    p.add_argument("input")
    p.add_argument("--mod", type=int, help="minimal period modulo M instead of exact")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="check a theorem on concrete systems")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("--mod", type=int)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="write a known cover")
    p.add_argument("kind", choices=("erdos", "classic"))
    p.add_argument("--n", type=int)
    p.add_argument("-o", "--output")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("fuzz", help="run seeded random systems through a checker")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--k", type=int, default=5, help="maximum number of classes")
    p.add_argument("--pool", default="2..12", help="moduli pool, e.g. 2..12 or 2,3,4,6")
    p.add_argument("--theorem", choices=THEOREMS, default="1.1")
    p.add_argument("--mod-range", default="2..13")
    p.add_argument("--replay", default="fuzz-counterexamples.json",
                   help="where to dump FALSIFIED cases")
    common(p)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("expsum", help="exponential sum at alpha = c/d")
    p.add_argument("input")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_expsum)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"covsys {args.command}: {exc}", file=sys.stderr)
    except CovsysError as exc:
        print(f"covsys {args.command}: {exc}", file=sys.stderr)
    except ValueError as exc:
        print(f"covsys {args.command}: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"covsys {args.command}: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
