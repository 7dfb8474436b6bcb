"""Command-line interface.

Exit codes: 0 success, 1 parse error in the input program, 2 usage or
semantic error, 3 an identity check found a counterexample.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import INF, Series, Symbol
from .derivation import DerivativeSpec, point_derivative, second_partial
from .errors import NCError, ParseError, SymbolKindError, UnknownSymbolError
from .exprio import dumps, encode_report, encode_reports, encode_series, parse_program, print_series
from .identities import SUITES, GenParams, run_suite
from .mutants import MUTANTS
from .substitution import Assignment, substitute

EXIT_OK, EXIT_PARSE, EXIT_SEMANTIC, EXIT_FAILURE = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _common(order_default: int = 6) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--order", type=int, default=order_default, help="global truncation order (default %(default)s)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    return p


def _with_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("file", nargs="?", help="program file")
    p.add_argument("-e", dest="expr", help="inline program text")
    p.add_argument("--of", default="f", help="name of the series to operate on (default %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="ncpoint", description="Point-derivatives of noncommutative power series.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", parents=[common], help="beta-derivative of a series")
    _with_input(p)
    p.add_argument("--var", required=True)
    p.add_argument("--beta", required=True, help="name of the series (or symbol) to differentiate at")

    p = sub.add_parser("second", parents=[common], help="second partial: inner derivative first")
    _with_input(p)
    p.add_argument("--outer-var", required=True)
    p.add_argument("--outer-beta", required=True)
    p.add_argument("--inner-var", required=True)
    p.add_argument("--inner-beta", required=True)

    p = sub.add_parser("subst", parents=[common], help="substitute series for variables")
    _with_input(p)
    p.add_argument("--assign", action="append", default=[], metavar="VAR=NAME")

    p = sub.add_parser("check", parents=[common], help="run identity suites")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--max-terms", type=int, default=4)
    p.add_argument("--coeff-bound", type=int, default=5)
    p.add_argument("--betas", type=int, default=5, help="random points for the uniqueness suite")
    p.add_argument("--mutant", choices=sorted(MUTANTS), help="check a deliberately broken derivative instead")
    return parser


def _load(args) -> tuple:
    if (args.file is None) == (args.expr is None):
        raise _Usage("give exactly one of FILE or -e EXPR")
    if args.expr is not None:
        text = args.expr
    else:
        try:
            text = Path(args.file).read_text()
        except OSError as exc:
            raise _Usage(f"cannot read {args.file}: {exc}") from None
    return parse_program(text, order=args.order)


def _lookup(ctx, names: dict[str, Series], name: str) -> Series:
    if name in names:
        return names[name]
    if name in ctx:
        return Series.symbol(ctx, name)
    raise UnknownSymbolError(f"unknown name {name!r}")


def _variable(ctx, name: str) -> Symbol:
    return ctx.variable(name)


def _emit(result: Series, args) -> None:
    if args.format == "structured":
        print(dumps(encode_series(result)))
        return
    limit = None if result.valid_order == INF else min(result.valid_order, args.order)
    print(print_series(result, limit))


def cmd_derive(args) -> int:
    ctx, names = _load(args)
    f = _lookup(ctx, names, args.of)
    ds = DerivativeSpec(_variable(ctx, args.var), _lookup(ctx, names, args.beta))
    _emit(point_derivative(f, ds), args)
    return EXIT_OK


def cmd_second(args) -> int:
    ctx, names = _load(args)
    f = _lookup(ctx, names, args.of)
    outer = DerivativeSpec(_variable(ctx, args.outer_var), _lookup(ctx, names, args.outer_beta))
    inner = DerivativeSpec(_variable(ctx, args.inner_var), _lookup(ctx, names, args.inner_beta))
    _emit(second_partial(f, outer, inner), args)
    return EXIT_OK


def cmd_subst(args) -> int:
    ctx, names = _load(args)
    f = _lookup(ctx, names, args.of)
    mapping = {}
    for item in args.assign:
        var, sep, target = item.partition("=")
        if not sep or not var or not target:
            raise _Usage(f"bad assignment {item!r}; expected VAR=NAME")
        sym = ctx[var.strip()]
        if not sym.is_variable:
            raise SymbolKindError(f"cannot assign to constant {sym.name!r}")
        if sym in mapping:
            raise _Usage(f"{sym.name!r} assigned twice")
        mapping[sym] = _lookup(ctx, names, target.strip())
    _emit(substitute(f, Assignment(mapping)), args)
    return EXIT_OK


def cmd_check(args) -> int:
    if args.trials < 0 or args.order < 0:
        raise _Usage("--trials and --order must be non-negative")
    params = GenParams(
        seed=args.seed,
        max_degree=args.max_degree,
        max_terms=args.max_terms,
        coeff_bound=args.coeff_bound,
    )
    derivative = MUTANTS[args.mutant] if args.mutant else point_derivative
    names = SUITES if args.suite == "all" else (args.suite,)
    reports = []
    for name in names:
        trials = args.betas if name == "uniqueness" else args.trials
        reports.append(run_suite(name, params, trials, order=args.order, derivative=derivative))
    if args.format == "structured":
        doc = encode_reports(reports) if args.suite == "all" else encode_report(reports[0])
        print(dumps(doc))
    else:
        for r in reports:
            print(r.summary())
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILURE


COMMANDS = {"derive": cmd_derive, "second": cmd_second, "subst": cmd_subst, "check": cmd_check}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (NCError, _Usage, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
