"""Command-line front end.

Subcommands: ``check`` runs the trackability analysis for a network and a
reference file, ``synthesize`` additionally extracts control sequences from a
given initial state, ``simulate`` runs the network open-loop.  A hidden
``oracle`` subcommand cross-checks the solvers against the brute-force
reference implementations on seeded random instances.

Exit codes: 0 universal verdict / feasible synthesis, 2 partial verdict or
infeasible initial state, 3 incompatible reference, 1 usage or parse errors.
Reports are deterministic: sets are sorted ascending, all indices 1-based.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from .fileio import ParseError, load_network, load_reference
from .finite import (
    ReferenceTrajectory,
    TrackingInfeasible,
    compatible_pairs,
    enumerate_finite,
    solve_finite,
    synthesize_finite,
)
from .network import Bcn
from .oracle import (
    brute_finite_trackable,
    brute_periodic_trackable_set,
    random_bcn,
    random_outputs,
)
from .periodic import (
    PeriodicReference,
    enumerate_periodic,
    solve_periodic,
    synthesize_periodic,
    tracking_orbit,
)
from .stp import LogicalVector

_EXIT_OK = 0
_EXIT_USAGE = 1
_EXIT_PARTIAL = 2
_EXIT_INCOMPATIBLE = 3

_VERDICT_EXIT = {
    "universal": _EXIT_OK,
    "partial": _EXIT_PARTIAL,
    "incompatible": _EXIT_INCOMPATIBLE,
}


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; this tool reserves 2 for
    partial verdicts, so usage errors are remapped to 1."""

    def error(self, message):
        self.exit(_EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="bcntrack",
        description="Trackability analysis and controller synthesis for "
        "Boolean control networks in algebraic form.",
    )
    sub = parser.add_subparsers(
        dest="command", required=True, metavar="{check,synthesize,simulate}"
    )

    check = sub.add_parser("check", help="decide trackability of a reference")
    check.add_argument("network", help="network file")
    check.add_argument("trajectory", help="reference trajectory file")
    check.add_argument(
        "--mode",
        choices=("finite", "periodic"),
        help="override the trajectory file's own finite/periodic marker",
    )
    check.add_argument("--format", choices=("text", "machine"), default="text")
    check.set_defaults(func=_cmd_check)

    synth = sub.add_parser("synthesize", help="extract tracking control sequences")
    synth.add_argument("network")
    synth.add_argument("trajectory")
    synth.add_argument("--x0", type=int, required=True, help="initial state index")
    synth.add_argument("--mode", choices=("finite", "periodic"))
    synth.add_argument(
        "--horizon",
        type=int,
        help="number of control steps (periodic mode; omit for the "
        "prefix+cycle description)",
    )
    synth.add_argument("--policy", choices=("min", "all"), default="min")
    synth.add_argument(
        "--limit", type=int, default=10_000, help="cap for --policy all"
    )
    synth.add_argument("--format", choices=("text", "machine"), default="text")
    synth.set_defaults(func=_cmd_synthesize)

    sim = sub.add_parser("simulate", help="run the network open-loop")
    sim.add_argument("network")
    sim.add_argument("--x0", type=int, required=True)
    sim.add_argument(
        "--inputs",
        type=int,
        nargs="*",
        default=[],
        help="input value indices, applied in order",
    )
    sim.add_argument("--format", choices=("text", "machine"), default="text")
    sim.set_defaults(func=_cmd_simulate)

    oracle = sub.add_parser("oracle")  # debugging aid, hidden from the help
    oracle.add_argument("--mode", choices=("finite", "periodic"), default="finite")
    oracle.add_argument("--seed", type=int, default=0)
    oracle.add_argument("--count", type=int, default=20)
    oracle.add_argument("--format", choices=("text", "machine"), default="text")
    oracle.set_defaults(func=_cmd_oracle)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else _EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"bcntrack: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"bcntrack: {exc}", file=sys.stderr)
        return _EXIT_USAGE


def run() -> None:
    sys.exit(main())


def _emit(report: dict, fmt: str) -> None:
    if fmt == "machine":
        print(json.dumps(report, indent=2))
    else:
        print(_render_text(report))


def _resolve_mode(args, ref):
    mode = args.mode
    if mode is None:
        mode = "periodic" if isinstance(ref, PeriodicReference) else "finite"
    if mode == "periodic" and not isinstance(ref, PeriodicReference):
        ref = PeriodicReference(ref.outputs)
    elif mode == "finite" and not isinstance(ref, ReferenceTrajectory):
        ref = ReferenceTrajectory(ref.outputs)
    return mode, ref


def _finite_report(bcn: Bcn, ref: ReferenceTrajectory) -> tuple[dict, object, object]:
    solution = solve_finite(bcn, ref)
    table = compatible_pairs(bcn, solution.trajectory_masks)
    if not solution.entry_states:
        verdict = "incompatible"
    elif solution.solvable_everywhere:
        verdict = "universal"
    else:
        verdict = "partial"
    report = {
        "mode": "finite",
        "horizon": ref.horizon,
        "reference": list(ref.outputs),
        "verdict": verdict,
        "entry_states": list(solution.entry_states),
        "initial_states": list(solution.initial_states),
        "trajectory_supports": [list(s) for s in solution.state_sets],
        "pair_tables": [[list(p) for p in slot] for slot in table.slots],
    }
    return report, solution, table


def _periodic_report(bcn: Bcn, ref: PeriodicReference) -> tuple[dict, object]:
    solution = solve_periodic(bcn, ref)
    if not solution.compatible:
        verdict = "incompatible"
    elif solution.solvable_everywhere:
        verdict = "universal"
    else:
        verdict = "partial"
    report = {
        "mode": "periodic",
        "period": ref.period,
        "reference": list(ref.outputs),
        "verdict": verdict,
        "rounds": solution.rounds,
        "compatible": solution.compatible,
        "entry_states": list(solution.entry_states),
        "initial_states": list(solution.initial_states),
        "trajectory_supports": [
            list(m.support()) for m in solution.trajectory_masks
        ],
        "pair_tables": [
            [list(p) for p in slot] for slot in solution.pair_table.slots
        ],
    }
    return report, solution


def _cmd_check(args) -> int:
    bcn = load_network(args.network)
    mode, ref = _resolve_mode(args, load_reference(args.trajectory))
    if mode == "finite":
        report, _, _ = _finite_report(bcn, ref)
    else:
        report, _ = _periodic_report(bcn, ref)
    _emit(report, args.format)
    return _VERDICT_EXIT[report["verdict"]]


def _trace_dict(bcn: Bcn, x0: int, sequence: tuple[int, ...]) -> dict:
    inputs = [LogicalVector(bcn.num_inputs, u) for u in sequence]
    trajectory = bcn.simulate(LogicalVector(bcn.num_states, x0), inputs)
    return {
        "inputs": list(sequence),
        "states": list(trajectory.state_indices),
        "outputs": list(trajectory.output_indices),
    }


def _cmd_synthesize(args) -> int:
    bcn = load_network(args.network)
    mode, ref = _resolve_mode(args, load_reference(args.trajectory))
    if not 1 <= args.x0 <= bcn.num_states:
        raise ValueError(
            f"state index {args.x0} out of range [1, {bcn.num_states}]"
        )

    if mode == "finite":
        if args.horizon is not None:
            raise ValueError("--horizon applies to periodic mode only")
        report, solution, table = _finite_report(bcn, ref)
        if report["verdict"] == "incompatible":
            report["synthesis"] = None
            _emit(report, args.format)
            print(
                "bcntrack: no state trajectory is compatible with the reference",
                file=sys.stderr,
            )
            return _EXIT_INCOMPATIBLE
        try:
            if args.policy == "min":
                sequence = synthesize_finite(bcn, table, args.x0)
                report["synthesis"] = {
                    "policy": "min",
                    "initial_state": args.x0,
                    **_trace_dict(bcn, args.x0, sequence),
                }
            else:
                found = enumerate_finite(bcn, table, args.x0, limit=args.limit)
                report["synthesis"] = {
                    "policy": "all",
                    "initial_state": args.x0,
                    "count": len(found.sequences),
                    "truncated": found.truncated,
                    "sequences": [list(s) for s in found.sequences],
                }
        except TrackingInfeasible as exc:
            return _report_infeasible(report, args, exc)
        _emit(report, args.format)
        return _EXIT_OK

    report, solution = _periodic_report(bcn, ref)
    if not solution.compatible:
        report["synthesis"] = None
        _emit(report, args.format)
        print(
            "bcntrack: no state trajectory can repeat the reference period",
            file=sys.stderr,
        )
        return _EXIT_INCOMPATIBLE
    try:
        if args.policy == "all":
            if args.horizon is None:
                raise ValueError("--policy all needs an explicit --horizon")
            found = enumerate_periodic(
                bcn, solution, args.x0, args.horizon, limit=args.limit
            )
            report["synthesis"] = {
                "policy": "all",
                "initial_state": args.x0,
                "horizon": args.horizon,
                "count": len(found.sequences),
                "truncated": found.truncated,
                "sequences": [list(s) for s in found.sequences],
            }
        elif args.horizon is not None:
            sequence = synthesize_periodic(bcn, solution, args.x0, args.horizon)
            report["synthesis"] = {
                "policy": "min",
                "initial_state": args.x0,
                "horizon": args.horizon,
                **_trace_dict(bcn, args.x0, sequence),
            }
        else:
            orbit = tracking_orbit(bcn, solution, args.x0)
            report["synthesis"] = {
                "policy": "min",
                "initial_state": args.x0,
                "prefix": [list(step) for step in orbit.prefix],
                "cycle": [list(step) for step in orbit.cycle],
            }
    except TrackingInfeasible as exc:
        return _report_infeasible(report, args, exc)
    _emit(report, args.format)
    return _EXIT_OK


def _report_infeasible(report: dict, args, exc: TrackingInfeasible) -> int:
    report["synthesis"] = None
    _emit(report, args.format)
    feasible = " ".join(str(s) for s in exc.feasible_states) or "-"
    print(
        f"bcntrack: {exc}; feasible initial states: {feasible}",
        file=sys.stderr,
    )
    return _EXIT_PARTIAL


def _cmd_simulate(args) -> int:
    bcn = load_network(args.network)
    if not 1 <= args.x0 <= bcn.num_states:
        raise ValueError(
            f"state index {args.x0} out of range [1, {bcn.num_states}]"
        )
    for u in args.inputs:
        if not 1 <= u <= bcn.num_inputs:
            raise ValueError(
                f"input index {u} out of range [1, {bcn.num_inputs}]"
            )
    report = {
        "mode": "simulate",
        "initial_state": args.x0,
        **_trace_dict(bcn, args.x0, tuple(args.inputs)),
    }
    _emit(report, args.format)
    return _EXIT_OK


def _cmd_oracle(args) -> int:
    """Cross-check the solvers against brute force on seeded random instances."""
    rng = np.random.default_rng(args.seed)
    results = []
    mismatches = 0
    for index in range(args.count):
        n = int(rng.integers(2, 11))
        m = int(rng.integers(1, 4))
        p = int(rng.integers(2, 5))
        t = int(rng.integers(1, 5))
        bcn = random_bcn(rng, n, m, p)
        outputs = random_outputs(rng, p, t)
        if args.mode == "finite":
            solution = solve_finite(bcn, ReferenceTrajectory(outputs))
            solver_set = set(solution.initial_states)
            oracle_set = {
                x0
                for x0 in range(1, n + 1)
                if brute_finite_trackable(bcn, outputs, x0)
            }
        else:
            solver_set = set(
                solve_periodic(bcn, PeriodicReference(outputs)).initial_states
            )
            oracle_set = set(brute_periodic_trackable_set(bcn, outputs))
        agree = solver_set == oracle_set
        mismatches += 0 if agree else 1
        results.append(
            {
                "instance": index,
                "dims": [n, m, p],
                "reference": list(outputs),
                "agree": agree,
                "solver": sorted(solver_set),
                "oracle": sorted(oracle_set),
            }
        )
    report = {
        "mode": f"oracle-{args.mode}",
        "seed": args.seed,
        "count": args.count,
        "mismatches": mismatches,
        "instances": results,
    }
    if args.format == "machine":
        print(json.dumps(report, indent=2))
    else:
        for row in results:
            status = "agree" if row["agree"] else "MISMATCH"
            dims = "x".join(str(d) for d in row["dims"])
            print(
                f"instance {row['instance']}: dims {dims} "
                f"ref {row['reference']} -> {status}"
            )
        print(f"mismatches: {mismatches}/{args.count}")
    return _EXIT_OK if mismatches == 0 else _EXIT_PARTIAL


def _fmt_ints(values) -> str:
    return " ".join(str(v) for v in values) if values else "-"


def _render_text(report: dict) -> str:
    lines = []
    for key, value in report.items():
        label = key.replace("_", " ")
        if key == "trajectory_supports":
            lines.append("trajectory supports:")
            for t, sup in enumerate(value, start=1):
                lines.append(f"  t={t}: {_fmt_ints(sup)}")
        elif key == "pair_tables":
            lines.append("admissible state/input pairs:")
            for t, slot in enumerate(value):
                pairs = " ".join(f"({s},{u})" for s, u in slot)
                lines.append(f"  t={t}: {pairs or '-'}")
        elif key == "instances":
            continue
        elif key == "synthesis":
            if value is None:
                lines.append("synthesis: none")
                continue
            lines.append("synthesis:")
            for sub_key, sub_value in value.items():
                if sub_key in ("prefix", "cycle"):
                    pairs = " ".join(f"({s},{u})" for s, u in sub_value)
                    lines.append(f"  {sub_key}: {pairs or '-'}")
                elif sub_key == "sequences":
                    lines.append("  sequences:")
                    for seq in sub_value:
                        lines.append(f"    {_fmt_ints(seq)}")
                elif isinstance(sub_value, list):
                    lines.append(f"  {sub_key}: {_fmt_ints(sub_value)}")
                else:
                    lines.append(f"  {sub_key}: {sub_value}")
        elif isinstance(value, list):
            lines.append(f"{label}: {_fmt_ints(value)}")
        else:
            lines.append(f"{label}: {value}")
    return "\n".join(lines)
