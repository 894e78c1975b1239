"""Command-line front end: ``transmean ord|mean|divide|laws|capture``.

Exit status: 0 on success, 1 when a law or capture check fails or a defined
partial operation (``NotDivisible``, ``UnsupportedDivision``) is hit, 2 for
usage, parse and validation errors.
"""

import argparse
from fractions import Fraction
import sys

from . import capture as cap
from ._text import ParseError
from .laws import GenConfig, LAWS, run_laws
from .mean import (
    BlockHasNoMean, BudgetExceeded, LabelSequenceError, NotDivisible,
    UnsupportedDivision, divide, mean_pair, truncation_oracle,
)
from .ordinal import (
    OrdinalError, omega_pow, ord_add, ord_cmp, ord_mul, ord_parse,
    standard_decomposition,
)
from .seqalg import SeqError, format_value, seq_parse, seq_print


class UsageError(Exception):
    pass


def _emit(out, fmt, pairs, text=None):
    """Write ``key=value`` lines in lines mode, otherwise ``text``."""
    if fmt == "lines":
        for k, v in pairs:
            print(f"{k}={v}", file=out)
    else:
        print(text if text is not None else " ".join(f"{k}={v}" for k, v in pairs),
              file=out)


def _widths(text):
    try:
        widths = [int(w) for w in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad width list {text!r}") from None
    if not widths or any(w < 1 for w in widths):
        raise argparse.ArgumentTypeError("widths must be positive integers")
    return tuple(widths)


def _nonneg(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _seed(text):
    n = int(text)
    if not 0 <= n < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return n


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad rational {text!r}") from None


# -- commands -------------------------------------------------------------------

def cmd_ord(args, out):
    a = ord_parse(args.a)
    if args.sub == "eval":
        _emit(out, args.format, [("value", a)], str(a))
    elif args.sub == "decomp":
        sigma, n, rho = standard_decomposition(a)
        _emit(out, args.format, [("sigma", sigma), ("n", n), ("rho", rho)])
    else:
        if args.b is None:
            raise UsageError(f"ord {args.sub} needs two ordinals")
        b = ord_parse(args.b)
        result = {"cmp": ord_cmp, "add": ord_add, "mul": ord_mul}[args.sub](a, b)
        _emit(out, args.format, [("value", result)], str(result))
    return 0


def cmd_mean(args, out):
    s = seq_parse(args.expr, labels=True)
    pair = mean_pair(s)
    m = pair.mean
    pairs = [("upper", format_value(pair.upper)), ("lower", format_value(pair.lower)),
             ("mean", "none" if m is None else format_value(m))]
    if args.widths:
        lo, hi = truncation_oracle(s, args.widths)
        pairs += [("oracle_lower", f"{float(lo):.6f}"),
                  ("oracle_upper", f"{float(hi):.6f}")]
    _emit(out, args.format, pairs)
    return 0


def cmd_divide(args, out):
    s = seq_parse(args.expr, labels=True)
    b = ord_parse(args.ord)
    try:
        q = divide(s, b, strict=args.strict)
    except (NotDivisible, UnsupportedDivision, BlockHasNoMean) as exc:
        print(type(exc).__name__, file=out)
        print(f"transmean: {exc}", file=sys.stderr)
        return 1
    _emit(out, args.format, [("result", seq_print(q))], seq_print(q))
    return 0


def cmd_laws(args, out):
    cfg = GenConfig(seed=args.seed, case_count=args.cases,
                    tolerance=args.tolerance, oracle_widths=args.widths)
    reports = run_laws(cfg, args.law or None)
    for rep in reports:
        print(rep.summary(), file=out)
        if args.format == "text":
            for f in rep.failures[:10]:
                print(f"  {f}", file=out)
            if len(rep.failures) > 10:
                print(f"  ... {len(rep.failures) - 10} more", file=out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_capture(args, out):
    space = cap.read_space(args.space)
    if args.sub == "build":
        print(seq_print(cap.build_capture(space, args.depth)), file=out)
        return 0
    if args.sub == "slln":
        rep = cap.slln_trial(space, args.samples, args.trials, args.seed)
        if args.format == "lines":
            for line in rep.lines():
                print(line, file=out)
        else:
            _print_slln(rep, out)
        return 0 if rep.passed else 1
    # verify
    x = (seq_parse(args.seq, labels=True) if args.seq
         else cap.build_capture(space, args.depth))
    resolution = (ord_parse(args.resolution) if args.resolution
                  else omega_pow(args.depth))
    try:
        rep = cap.verify_capture(space, x, resolution, all_events=args.all_events)
    except (NotDivisible, UnsupportedDivision) as exc:
        print(type(exc).__name__, file=out)
        print(f"transmean: {exc}", file=sys.stderr)
        return 1
    for line in rep.lines():
        print(line, file=out)
    return 0 if rep.passed else 1


def _print_slln(rep, out):
    print(f"slln samples={rep.samples} trials={rep.trials} seed={rep.seed}", file=out)
    print(f"max deviation {rep.max_deviation:.6f} "
          f"(largest event sigma {rep.sigma:.6f}, 3 sigma {rep.bound:.6f})", file=out)
    print(f"exceedances: {len(rep.exceedances)}", file=out)
    for trial, name, dev, bound in rep.exceedances:
        print(f"  trial {trial} event {name}: deviation {dev:.6f} >= {bound:.6f}",
              file=out)
    if rep.degenerate and rep.exceedances:
        print("single sample: exceedances reported, not failed", file=out)
    print("PASS" if rep.passed else "FAIL", file=out)


# -- parser ---------------------------------------------------------------------

def build_parser():
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "lines"), default="text",
                     help="plain text (default) or key=value lines")

    p = argparse.ArgumentParser(
        prog="transmean",
        description="Exact transfinite means of symbolic sequences.")
    sub = p.add_subparsers(dest="command", required=True)

    o = sub.add_parser("ord", parents=[fmt], help="ordinal arithmetic")
    o.add_argument("sub", choices=("eval", "cmp", "add", "mul", "decomp"))
    o.add_argument("a")
    o.add_argument("b", nargs="?")
    o.set_defaults(func=cmd_ord)

    m = sub.add_parser("mean", parents=[fmt], help="upper, lower and true mean")
    m.add_argument("expr")
    m.add_argument("--widths", type=_widths,
                   help="also run the truncation oracle with these level widths")
    m.set_defaults(func=cmd_mean)

    d = sub.add_parser("divide", parents=[fmt], help="block division s/b")
    d.add_argument("expr")
    d.add_argument("ord")
    d.add_argument("--strict", action="store_true",
                   help="require every block to have a true mean")
    d.set_defaults(func=cmd_divide)

    lw = sub.add_parser("laws", help="property-based law checks")
    lsub = lw.add_subparsers(dest="sub", required=True)
    run = lsub.add_parser("run", parents=[fmt])
    run.add_argument("--seed", type=_seed, default=42)
    run.add_argument("--cases", type=_nonneg, default=100)
    run.add_argument("--tolerance", type=_fraction, default=Fraction(1, 50))
    run.add_argument("--widths", type=_widths, default=(3000, 300, 60, 20))
    run.add_argument("--law", action="append", choices=list(LAWS),
                     help="run only this law (repeatable)")
    run.set_defaults(func=cmd_laws)

    c = sub.add_parser("capture", parents=[fmt], help="capturing sequences")
    c.add_argument("sub", choices=("build", "verify", "slln"))
    c.add_argument("space", help="probability space file")
    c.add_argument("--depth", type=_positive, default=1)
    c.add_argument("--seq", help="sequence over outcome labels (verify)")
    c.add_argument("--resolution", help="block ordinal (verify; default w^depth)")
    c.add_argument("--all-events", action="store_true",
                   help="verify every subset of outcomes")
    c.add_argument("--samples", type=_positive, default=10000)
    c.add_argument("--trials", type=_positive, default=10)
    c.add_argument("--seed", type=_seed, default=0)
    c.set_defaults(func=cmd_capture)
    return p


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (ParseError, OrdinalError, SeqError, LabelSequenceError,
            cap.SpaceError, BudgetExceeded, UsageError, ValueError,
            OSError) as exc:
        print(f"transmean: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
