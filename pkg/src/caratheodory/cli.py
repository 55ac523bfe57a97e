"""Command-line front end.

Exit codes: 0 success, 1 parse or spec error, 2 precondition violation
(bad ``--eps``, ``--trials``, ``--seed`` or usage), 3 property falsified.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import finite_oracle as fo
from . import interval_algebra as ia
from .errors import PreconditionError, SpecError
from .laws import run_laws
from .limit_points import ErrorInterval, approx, check_eps, distance_between, measure_with_error
from .set_dsl import DslError, evaluate

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_PRECONDITION = 2
EXIT_FALSIFIED = 3

DEFAULT_EPS = "1/1024"
MAX_RANDOM_UNIVERSE = 8
U64 = 1 << 64


class _Usage(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    # argparse exits on its own; route usage errors through our exit codes
    def error(self, message):
        raise _Usage(f"{self.prog}: error: {message}")


def _build_parser() -> argparse.ArgumentParser:
    common = _ArgParser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default="human")

    eps = _ArgParser(add_help=False)
    eps.add_argument("--eps", default=DEFAULT_EPS, help="precision as p/q (default %(default)s)")

    seeded = _ArgParser(add_help=False)
    seeded.add_argument("--seed", default="0", help="unsigned 64-bit seed (default %(default)s)")

    p = _ArgParser(prog="caratheodory", description="Certified measure computations on limit-point sets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    m = sub.add_parser("measure", parents=[common, eps], help="certified enclosure of a set's measure")
    m.add_argument("expr")

    d = sub.add_parser("dist", parents=[common, eps], help="certified enclosure of the distance of two sets")
    d.add_argument("expr_a")
    d.add_argument("expr_b")

    a = sub.add_parser("approx", parents=[common, eps], help="print an eps-approximant in canonical text form")
    a.add_argument("expr")

    law = sub.add_parser("laws", parents=[common, seeded], help="run the randomized exact law suite")
    law.add_argument("--trials", default="500")

    o = sub.add_parser("oracle", parents=[common, seeded], help="exhaustive checks on finite universes")
    o.add_argument("spec", nargs="?", help='partition spec such as "0,1:1/2;2,3:1/2"')
    o.add_argument("--random", nargs=2, metavar=("N", "TRIALS"), help="TRIALS random spaces of size at most N")
    return p


def _positive_int(text: str, what: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise PreconditionError(f"{what} must be an integer, got {text!r}") from None
    if v < 1:
        raise PreconditionError(f"{what} must be at least 1, got {v}")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise PreconditionError(f"seed must be an unsigned 64-bit integer, got {text!r}") from None
    if not 0 <= v < U64:
        raise PreconditionError(f"seed must be an unsigned 64-bit integer, got {v}")
    return v


def _print_interval(label: str, iv: ErrorInterval, fmt: str, out) -> None:
    if fmt == "machine":
        print(f"{ia.format_rat(iv.lo)} {ia.format_rat(iv.hi)}", file=out)
    else:
        print(f"{label} in {iv}  (width {ia.format_rat(iv.width)})", file=out)


def cmd_measure(expr_text: str, eps, fmt: str = "human", out=None) -> int:
    out = out or sys.stdout
    s = evaluate(expr_text)
    _print_interval(f"mu({expr_text})", measure_with_error(s, eps), fmt, out)
    return EXIT_OK


def cmd_dist(expr_a: str, expr_b: str, eps, fmt: str = "human", out=None) -> int:
    out = out or sys.stdout
    sa, sb = evaluate(expr_a), evaluate(expr_b)
    _print_interval(f"d({expr_a}, {expr_b})", distance_between(sa, sb, eps), fmt, out)
    return EXIT_OK


def cmd_approx(expr_text: str, eps, fmt: str = "human", out=None) -> int:
    out = out or sys.stdout
    print(ia.to_text(approx(evaluate(expr_text), eps), ascii=fmt == "machine"), file=out)
    return EXIT_OK


def cmd_laws(trials: int, seed: int, fmt: str = "human", out=None) -> int:
    out = out or sys.stdout
    report = run_laws(trials, seed)
    if fmt == "machine":
        for r in report.results:
            print(f"{r.name} {'pass' if r.ok else 'fail'} {r.passed}", file=out)
            if not r.ok:
                print(f"{r.name} counterexample {r.counterexample}", file=out)
    else:
        print(f"law suite: {trials} trial(s) per law, seed {seed}", file=out)
        for r in report.results:
            print(f"  {r.name:<20} {r.passed:>6}/{r.trials:<6} {r.description}", file=out)
            if not r.ok:
                print(f"    FALSIFIED by {r.counterexample}", file=out)
        print("all laws hold" if report.ok else "some laws FAILED", file=out)
    return EXIT_OK if report.ok else EXIT_FALSIFIED


def _check_space(space: fo.FiniteSpace) -> tuple[bool, int, int, bool, bool]:
    closure = fo.limit_closure(space)
    algebra = {e.mask for e in space.algebra()}
    t2 = fo.verify_measurable_is_closure(space)
    ext = fo.verify_extension(space)
    return t2 and ext, len(closure), sum(e.mask not in algebra for e in closure), t2, ext


def cmd_oracle(spec: Optional[str], random_n: Optional[int] = None, trials: int = 1, seed: int = 0,
               fmt: str = "human", out=None) -> int:
    out = out or sys.stdout
    if spec is not None:
        spaces = [fo.parse_partition_spec(spec)]
    else:
        rng = random.Random(seed)
        spaces = [fo.random_space(rng, random_n) for _ in range(trials)]
    verified = 0
    for idx, space in enumerate(spaces):
        ok, size, extra, t2, ext = _check_space(space)
        verified += ok
        if fmt == "machine":
            print(f"{idx} {'ok' if ok else 'fail'}", file=out)
        elif spec is not None or not ok:
            print(
                f"space {idx} [{space.spec_string()}]: limit closure has {size} sets "
                f"({extra} outside the algebra); measurable = limit closure: {'yes' if t2 else 'NO'}; "
                f"outer measure extends mu: {'yes' if ext else 'NO'}",
                file=out,
            )
    if fmt == "human":
        print(f"{verified}/{len(spaces)} space(s) verified", file=out)
    return EXIT_OK if verified == len(spaces) else EXIT_FALSIFIED


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _Usage as exc:
        print(exc, file=sys.stderr)
        return EXIT_PRECONDITION
    try:
        if args.command in ("measure", "dist", "approx"):
            eps = check_eps(args.eps)
            if args.command == "measure":
                return cmd_measure(args.expr, eps, args.format)
            if args.command == "dist":
                return cmd_dist(args.expr_a, args.expr_b, eps, args.format)
            return cmd_approx(args.expr, eps, args.format)
        if args.command == "laws":
            return cmd_laws(_positive_int(args.trials, "--trials"), _seed(args.seed), args.format)
        seed = _seed(args.seed)
        if (args.spec is None) == (args.random is None):
            raise PreconditionError("give exactly one of a partition spec or --random N TRIALS")
        if args.random is not None:
            n = _positive_int(args.random[0], "--random N")
            if n > MAX_RANDOM_UNIVERSE:
                raise PreconditionError(f"random universe size must be at most {MAX_RANDOM_UNIVERSE}, got {n}")
            return cmd_oracle(None, n, _positive_int(args.random[1], "--random TRIALS"), seed, args.format)
        return cmd_oracle(args.spec, fmt=args.format)
    except (DslError, SpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
