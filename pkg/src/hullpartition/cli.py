"""Command line interface.

Subcommands:
  solve   solve an instance file (general or tangent-restricted mode)
  oracle  brute-force optimum of a small instance
  gen     write a random instance file

Exit codes: 0 success, 1 parse/IO failure, 2 infeasible flags or
arguments, 3 oracle mismatch under --oracle-check.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .engine import solve
from .errors import DegenerateInput, NotDisjoint, ParseError, TooLarge
from .instances import generate_instance, parse_instance, write_instance, write_result
from .oracle import MAX_ORACLE_SIZE, brute_force_optimal
from .partitioner import pairwise_disjoint
from .svg import render_svg
from .tangents import solve_disjoint

EXIT_OK = 0
EXIT_IO = 1
EXIT_INFEASIBLE = 2
EXIT_MISMATCH = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hullpartition",
        description="Partition convex polygons to minimize the summed "
        "perimeter of per-component convex hulls.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance file")
    p_solve.add_argument("instance", help="instance JSON file")
    p_solve.add_argument(
        "--mode",
        choices=("auto", "general", "disjoint"),
        default="auto",
        help="solver mode; auto picks disjoint when inputs qualify",
    )
    p_solve.add_argument(
        "--oracle-check",
        action="store_true",
        help="verify the result against the brute-force oracle",
    )
    p_solve.add_argument("--svg", metavar="FILE", help="render the solution as SVG")
    p_solve.add_argument("--out", metavar="FILE", help="write the result JSON here")
    p_solve.add_argument(
        "--trace", action="store_true", help="include merge events in the result"
    )

    p_oracle = sub.add_parser("oracle", help="brute-force optimum (small n)")
    p_oracle.add_argument("instance", help="instance JSON file")
    p_oracle.add_argument("--out", metavar="FILE", help="write the result JSON here")

    p_gen = sub.add_parser("gen", help="generate a random instance")
    p_gen.add_argument("--n", type=int, required=True, help="number of polygons")
    p_gen.add_argument("--m", type=int, required=True, help="max vertices per polygon")
    p_gen.add_argument(
        "--disjoint",
        action="store_true",
        help="place polygons in separate cells so interiors are disjoint",
    )
    p_gen.add_argument("--seed", type=int, default=0, help="RNG seed")
    p_gen.add_argument("--out", metavar="FILE", required=True)
    return parser


def _read_instance(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return None
    try:
        return parse_instance(data)
    except (ParseError, DegenerateInput) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None


def _emit(payload: bytes, out: str | None) -> int:
    if out is None:
        sys.stdout.write(payload.decode("utf-8"))
        return EXIT_OK
    try:
        Path(out).write_bytes(payload)
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _cmd_solve(args) -> int:
    instance = _read_instance(args.instance)
    if instance is None:
        return EXIT_IO
    polys = instance.polygons

    if args.mode == "general":
        partition = solve(polys, trace=args.trace)
    elif args.mode == "disjoint":
        try:
            partition = solve_disjoint(polys, trace=args.trace, fallback=False)
        except NotDisjoint as exc:
            print(f"error: --mode disjoint: {exc}", file=sys.stderr)
            return EXIT_INFEASIBLE
    else:
        if pairwise_disjoint(polys):
            partition = solve_disjoint(polys, trace=args.trace, fallback=True)
        else:
            partition = solve(polys, trace=args.trace)

    if args.oracle_check:
        if len(polys) > MAX_ORACLE_SIZE:
            print(
                f"error: --oracle-check supports at most {MAX_ORACLE_SIZE} polygons",
                file=sys.stderr,
            )
            return EXIT_INFEASIBLE
        reference = brute_force_optimal(polys)
        scale = max(abs(reference.total), 1.0)
        if abs(partition.total - reference.total) > 1e-6 * scale:
            print(
                f"oracle mismatch: solver {partition.total!r} vs "
                f"oracle {reference.total!r}",
                file=sys.stderr,
            )
            return EXIT_MISMATCH

    if args.svg:
        status = _emit(render_svg(instance, partition), args.svg)
        if status != EXIT_OK:
            return status
    return _emit(write_result(partition), args.out)


def _cmd_oracle(args) -> int:
    instance = _read_instance(args.instance)
    if instance is None:
        return EXIT_IO
    try:
        partition = brute_force_optimal(instance.polygons)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    return _emit(write_result(partition), args.out)


def _cmd_gen(args) -> int:
    try:
        instance = generate_instance(
            args.n, args.m, "disjoint" if args.disjoint else "general", args.seed
        )
    except DegenerateInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    return _emit(write_instance(instance), args.out)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad flags, matching EXIT_INFEASIBLE.
        return int(exc.code or 0)
    if args.command == "solve":
        return _cmd_solve(args)
    if args.command == "oracle":
        return _cmd_oracle(args)
    return _cmd_gen(args)


if __name__ == "__main__":
    sys.exit(main())
