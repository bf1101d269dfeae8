"""Command line surface: solve, verify, gen, enum.

Exit codes: 0 solvable / verified, 1 not solvable / rejected, 2 usage or
format error, 3 desk-scale cap exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import gen, io
from .instance import validate_instance
from .solver import (CapError, InvalidInstance, audit_solution, brute_oracle,
                     lemma_certified, min_solve, solve)
from .universe import enum_completions


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(2)


def cmd_solve(args) -> int:
    inst = io.parse_instance(_read(args.instance))
    if args.ell is not None:
        inst = type(inst)(inst.graph, inst.pairs, inst.holes, args.ell, inst.assign)
    if args.oracle:
        sol = brute_oracle(inst)
        result = (len(sol.patch_edges), sol) if sol else None
    elif args.min:
        result = min_solve(inst, jobs=args.jobs)
    else:
        sol = solve(inst, jobs=args.jobs)
        result = (len(sol.patch_edges), sol) if sol else None
    if args.certify:
        certified = lemma_certified(inst)
        agree = certified == (result is not None)
        print(f"certify: {'agreement' if agree else 'DISAGREEMENT'}", file=sys.stderr)
    if result is None:
        print("no solution within budget", file=sys.stderr)
        return 1
    ell_star, sol = result
    text = io.serialize_solution(sol)
    if args.out:
        io.write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    inst = io.parse_instance(_read(args.instance))
    sol = io.parse_solution(_read(args.solution))
    ok, why = audit_solution(inst, sol)
    if not ok:
        print(f"rejected: {why}", file=sys.stderr)
        return 1
    print("ok")
    return 0


def cmd_gen(args) -> int:
    params = {}
    if args.k is not None:
        params["k"] = args.k
    if args.n is not None:
        params["n" if args.family == "cycle-terminals" else "max_n"] = args.n
    if args.gen_ell is not None:
        params["ell"] = args.gen_ell
    if args.arrangement and args.family == "cycle-terminals":
        params["arrangement"] = args.arrangement
    if args.extra is not None and args.family == "inactive-padding":
        params["extra"] = args.extra
    try:
        inst = gen.generate(args.family, seed=args.seed, **params)
    except (TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = io.serialize_instance(inst)
    if args.out:
        io.write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_enum(args) -> int:
    comps = enum_completions(args.completions)
    print(f"completions {len(comps)}")
    for c in comps:
        edges = " ".join(f"{u}-{v}" for u, v in c.edges)
        print(f"n={c.n} edges={edges}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="pdpc")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance")
    p.add_argument("instance")
    p.add_argument("--min", action="store_true", help="search the minimum budget")
    p.add_argument("--ell", type=int, default=None, help="override the budget")
    p.add_argument("--oracle", action="store_true", help="use the brute-force oracle")
    p.add_argument("--certify", action="store_true",
                   help="cross-check with the certificate machinery")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="validate a solution against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a seeded instance")
    p.add_argument("family", choices=gen.FAMILIES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--gen-ell", type=int, default=None)
    p.add_argument("--arrangement", default=None)
    p.add_argument("--extra", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("enum", help="dump enumeration universes")
    p.add_argument("--completions", type=int, required=True)
    p.set_defaults(func=cmd_enum)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except io.FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return 2
    except InvalidInstance as exc:
        print(f"invalid instance: {exc}", file=sys.stderr)
        return 2
    except CapError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
