"""Trackability analysis and controller synthesis for periodic reference outputs.

A periodic reference repeats a length-T block of output values forever.  The
analysis extends the finite two-sweep machinery over one period plus one extra
step (whose required output equals the first one) and then prunes iteratively:
a surviving trajectory family must close on itself, i.e. every kept state at
time T+1 must also be a kept time-1 state, so that periods can be chained
forever.  Each pruning round clears the time-(T+1) states that cannot restart
a period and re-runs the backward sweep; the rounds stop when the closure
condition holds or nothing survives.

The number of rounds is bounded by the size of the first output's state class
plus one (each round strictly shrinks the final mask), and by the class size
itself whenever the verdict is positive.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .finite import (
    ENUMERATION_LIMIT,
    PairTable,
    ReferenceTrajectory,
    SynthesisEnumeration,
    TrackingInfeasible,
    _check_reference,
    _prune_backward,
    _table_walks,
    compatible_pairs,
    forward_masks,
    solve_finite,
)
from .network import Bcn
from .stp import BooleanVector

from itertools import islice


@dataclass(frozen=True)
class PeriodicReference:
    """One period of a repeating output sequence; entry t is the output at
    times t+1, t+1+T, t+1+2T, ...  Minimality of the period is not required."""

    outputs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "outputs", tuple(int(i) for i in self.outputs))
        if not self.outputs:
            raise ValueError("a periodic reference needs at least one output")
        for t, i in enumerate(self.outputs, start=1):
            if i < 1:
                raise ValueError(f"output index {i} at time {t} must be >= 1")

    @property
    def period(self) -> int:
        return len(self.outputs)

    def minimal_period(self) -> int:
        """Smallest divisor period that reproduces the sequence."""
        t = self.period
        for d in range(1, t):
            if t % d == 0 and all(
                self.outputs[k] == self.outputs[k % d] for k in range(t)
            ):
                return d
        return t


@dataclass(frozen=True)
class PeriodicSolution:
    """Result of the iterated pruning over one period plus the closing step.

    ``trajectory_masks`` holds the final round's masks for times 1..T+1;
    ``first_round_masks`` the masks before any closure pruning.
    ``round_supports`` snapshots the mask supports of every round, first to
    last.  ``entry_states`` are the surviving time-1 states; a state tracks
    the reference iff one of its successors is an entry state, and those
    states form ``initial_states``.  ``pair_table`` covers times 0..T-1 of
    the first period; at later times slot t mod T applies (the slot-0 pairs
    subsume the would-be slot-T pairs).
    """

    rounds: int
    first_round_masks: tuple[BooleanVector, ...]
    trajectory_masks: tuple[BooleanVector, ...]
    round_supports: tuple[tuple[tuple[int, ...], ...], ...]
    entry_states: tuple[int, ...]
    initial_states: tuple[int, ...]
    compatible: bool
    solvable_everywhere: bool
    pair_table: PairTable

    @property
    def period(self) -> int:
        return len(self.pair_table)


def solve_periodic(bcn: Bcn, ref: PeriodicReference) -> PeriodicSolution:
    """Decide whether the periodic reference can be tracked, and from where.

    Incompatibility (no state trajectory can repeat the period forever) is a
    verdict, not an error; the solution then carries empty sets.
    """
    _check_reference(bcn, ref.outputs)
    if ref.minimal_period() < ref.period:
        warnings.warn(
            f"stated period {ref.period} is not minimal: the sequence repeats "
            f"every {ref.minimal_period()} steps; results are unaffected",
            stacklevel=2,
        )
    extended = ref.outputs + (ref.outputs[0],)
    candidates = forward_masks(bcn, extended)
    masks = _prune_backward(bcn, candidates[:-1], candidates[-1])
    first_round = tuple(masks)
    round_supports = [tuple(m.support() for m in masks)]
    rounds = 1
    while True:
        entry = set(masks[0].support())
        closing = set(masks[-1].support())
        if not entry or closing <= entry:
            break
        rounds += 1
        masks = _prune_backward(bcn, masks[:-1], masks[-1] & masks[0])
        round_supports.append(tuple(m.support() for m in masks))
    masks = tuple(masks)
    compatible = masks[0].any()
    predecessors_of_entry = bcn.preimage(masks[0])
    initial_states = predecessors_of_entry.support()
    table = compatible_pairs(bcn, masks).restricted(ref.period)
    return PeriodicSolution(
        rounds=rounds,
        first_round_masks=first_round,
        trajectory_masks=masks,
        round_supports=tuple(round_supports),
        entry_states=masks[0].support(),
        initial_states=initial_states,
        compatible=compatible,
        solvable_everywhere=len(initial_states) == bcn.num_states,
        pair_table=table,
    )


def check_universal_periodic(bcn: Bcn, ref: PeriodicReference) -> bool:
    """Whether the periodic reference is trackable from every initial state.

    Equivalent to universal trackability of the single-period restriction as
    a finite reference, which is what gets evaluated here.
    """
    return solve_finite(bcn, ReferenceTrajectory(ref.outputs)).solvable_everywhere


def trackable_from(solution: PeriodicSolution, x0: int) -> bool:
    """Whether the analyzed periodic reference is trackable starting at ``x0``."""
    if x0 < 1:
        raise ValueError(f"state index {x0} must be >= 1")
    return solution.compatible and x0 in solution.initial_states


def synthesize_periodic(
    bcn: Bcn, solution: PeriodicSolution, x0: int, horizon: int
) -> tuple[int, ...]:
    """First ``horizon`` inputs of a periodic tracking controller from ``x0``.

    Greedy smallest-index choices from the pair table, slot t mod T at time
    t.  The choice set is non-empty at every step whenever ``x0`` is
    feasible, so the walk never dead-ends.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    _require_feasible(solution, x0)
    table = solution.pair_table
    state = x0
    sequence = []
    for t in range(horizon):
        choices = table.admissible_inputs(t % len(table), state)
        if not choices:
            raise RuntimeError(
                f"inconsistent pair table: dead end at time {t} in state {state}"
            )
        sequence.append(choices[0])
        state = bcn.step(state, choices[0])
    return tuple(sequence)


def enumerate_periodic(
    bcn: Bcn,
    solution: PeriodicSolution,
    x0: int,
    horizon: int,
    limit: int = ENUMERATION_LIMIT,
) -> SynthesisEnumeration:
    """Every admissible length-``horizon`` input sequence from ``x0``, capped."""
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    _require_feasible(solution, x0)
    walks = _table_walks(bcn, solution.pair_table, 0, x0, horizon)
    kept = list(islice(walks, limit))
    truncated = next(walks, None) is not None
    return SynthesisEnumeration(tuple(kept), truncated)


@dataclass(frozen=True)
class TrackingOrbit:
    """Eventually-periodic controller: a finite prefix of (state, input)
    steps, then a cycle of steps repeated forever."""

    prefix: tuple[tuple[int, int], ...]
    cycle: tuple[tuple[int, int], ...]

    def input_sequence(self, horizon: int) -> tuple[int, ...]:
        """Materialize the first ``horizon`` inputs of the controller."""
        if horizon < 1:
            raise ValueError(f"horizon must be >= 1, got {horizon}")
        inputs = [u for _, u in self.prefix]
        cycle_inputs = [u for _, u in self.cycle]
        while len(inputs) < horizon:
            inputs.extend(cycle_inputs)
        return tuple(inputs[:horizon])


def tracking_orbit(bcn: Bcn, solution: PeriodicSolution, x0: int) -> TrackingOrbit:
    """Closed-form description of the greedy periodic controller from ``x0``.

    The greedy walk depends only on (time mod period, state), so it must
    revisit such a pair within period * states steps; everything from the
    first revisit onward repeats forever.
    """
    _require_feasible(solution, x0)
    table = solution.pair_table
    period = len(table)
    seen: dict[tuple[int, int], int] = {}
    steps: list[tuple[int, int]] = []
    state = x0
    t = 0
    while True:
        key = (t % period, state)
        if key in seen:
            start = seen[key]
            return TrackingOrbit(tuple(steps[:start]), tuple(steps[start:]))
        seen[key] = len(steps)
        choices = table.admissible_inputs(t % period, state)
        if not choices:
            raise RuntimeError(
                f"inconsistent pair table: dead end at time {t} in state {state}"
            )
        steps.append((state, choices[0]))
        state = bcn.step(state, choices[0])
        t += 1


def _require_feasible(solution: PeriodicSolution, x0: int) -> None:
    if x0 < 1:
        raise ValueError(f"state index {x0} must be >= 1")
    if not trackable_from(solution, x0):
        raise TrackingInfeasible(
            f"state {x0} cannot track the periodic reference",
            feasible_states=solution.initial_states,
        )
