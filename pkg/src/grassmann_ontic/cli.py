"""``grassmann-ontic`` command line.

Exit codes: 0 on success, 1 when ``check`` finds a failing invariant,
2 on usage errors.
"""
from __future__ import annotations

import argparse
import sys

from . import harness
from .ontic import InfeasibleSystem
from .sampling import DEFAULT_SEED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grassmann-ontic",
        description="Blowtorch experiments and constraint-family enumeration for one-qubit ontological models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_flags(p):
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="table", action="store_false", help="JSON record (default)")
        fmt.add_argument("--table", dest="table", action="store_true", help="human-readable table")
        p.add_argument("--timing", action="store_true", help="include wall time (makes output run-dependent)")
        p.set_defaults(table=False)

    state_help = "'bloch a/b,c/d,e/f', 'stab +x', 'mixed', or 'atom +-+' for the eight-state model"

    p = sub.add_parser("blowtorch", help="compare T1 and T2 on one input")
    p.add_argument("--model", required=True, choices=harness.BLOWTORCH_MODELS)
    p.add_argument("--state", required=True, help=state_help)
    add_output_flags(p)

    p = sub.add_parser("families", help="enumerate solution families of a constraint system")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--model", choices=harness.FAMILY_MODELS)
    src.add_argument("--system", metavar="FILE", help="constraint system in the text format")
    add_output_flags(p)

    p = sub.add_parser("evolve", help="apply a gate word to a state")
    p.add_argument("--gates", required=True, help="space-separated tokens from I X Y Z H T1 T2 (may be empty)")
    p.add_argument("--state", required=True, help=state_help)
    add_output_flags(p)

    p = sub.add_parser("measure", help="Pauli outcome probabilities")
    p.add_argument("--state", required=True, help=state_help)
    p.add_argument("--pauli", required=True, type=str.upper, choices=("X", "Y", "Z"))
    add_output_flags(p)

    p = sub.add_parser("regions", help="weights on the basis tuples and disjoint atoms")
    p.add_argument("--state", required=True, help=state_help)
    add_output_flags(p)

    p = sub.add_parser("check", help="run the invariant suites")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"seed for random sweeps (default {DEFAULT_SEED})")
    p.add_argument("--sweep", type=int, default=50, help="random cases per sweep")
    add_output_flags(p)
    return parser


def run(args) -> "harness.ExperimentReport":
    t = args.timing
    if args.command == "blowtorch":
        return harness.cmd_blowtorch(args.model, args.state, timing=t)
    if args.command == "families":
        return harness.cmd_families(args.model, args.system, timing=t)
    if args.command == "evolve":
        return harness.cmd_evolve(args.gates, args.state, timing=t)
    if args.command == "measure":
        return harness.cmd_measure(args.state, args.pauli, timing=t)
    if args.command == "regions":
        return harness.cmd_regions(args.state, timing=t)
    return harness.cmd_check(args.seed, args.sweep, timing=t)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep = run(args)
    except (harness.UsageError, InfeasibleSystem, ValueError) as exc:
        print(f"grassmann-ontic: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(rep.to_table() if args.table else rep.to_json())
    if args.command == "check" and rep.verdict != "pass":
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
