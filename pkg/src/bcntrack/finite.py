"""Trackability analysis and controller synthesis for finite reference outputs.

Everything here works on 0/1 state masks, one per time step of the reference.
A forward sweep keeps, at each step t, the states that produce the required
output value and are reachable in one step from a state kept at t-1.  A
backward sweep then clears every state with no kept successor at t+1, so the
surviving masks list exactly the states that lie on some full-length state
trajectory reproducing the reference.  The trajectory is trackable from every
initial state iff the final sweep leaves the first mask reachable in one step
from everywhere.

Controllers are read off a per-time table of admissible state/input pairs:
pairs whose successor stays inside the next surviving mask.  Walking the
table greedily (always the smallest admissible input) gives one open-loop
sequence; enumerating all branches gives every sequence that achieves exact
tracking.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Iterator, Sequence

from .network import Bcn
from .stp import BooleanVector

ENUMERATION_LIMIT = 10_000


class TrackingInfeasible(Exception):
    """Raised when no control sequence can track the reference from a state."""

    def __init__(self, message: str, feasible_states: tuple[int, ...] = ()):
        super().__init__(message)
        self.feasible_states = feasible_states


@dataclass(frozen=True)
class ReferenceTrajectory:
    """Finite reference output sequence; entry t is the output index at time t+1."""

    outputs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "outputs", tuple(int(i) for i in self.outputs))
        if not self.outputs:
            raise ValueError("a reference trajectory needs at least one output")
        for t, i in enumerate(self.outputs, start=1):
            if i < 1:
                raise ValueError(f"output index {i} at time {t} must be >= 1")

    @property
    def horizon(self) -> int:
        return len(self.outputs)


@dataclass(frozen=True)
class FiniteTrackingSolution:
    """Result of the two-sweep analysis over one finite reference.

    ``candidate_masks`` come from the forward sweep and bound the backward
    sweep's ``trajectory_masks`` entrywise.  ``state_sets`` are the supports
    of the trajectory masks (1-based, ascending); ``state_sets[0]`` holds the
    time-1 states of compatible trajectories.  ``initial_states`` lists every
    time-0 state from which tracking is feasible, i.e. the one-step
    predecessors of ``state_sets[0]``.
    """

    candidate_masks: tuple[BooleanVector, ...]
    trajectory_masks: tuple[BooleanVector, ...]
    state_sets: tuple[tuple[int, ...], ...]
    solvable_everywhere: bool
    initial_states: tuple[int, ...]

    @property
    def entry_states(self) -> tuple[int, ...]:
        """Time-1 states of trajectories compatible with the whole reference."""
        return self.state_sets[0]


def output_class(bcn: Bcn, output: int) -> BooleanVector:
    """Mask of the states whose output value is ``output``.

    This is the one-step indistinguishability class of the output value; it
    is the zero mask when the network cannot produce that value at all.
    """
    if not 1 <= output <= bcn.num_outputs:
        raise ValueError(
            f"output index {output} out of range [1, {bcn.num_outputs}]"
        )
    bits = [col == output for col in bcn.output_map.col_index]
    return BooleanVector(bits)


def forward_masks(bcn: Bcn, outputs: Sequence[int]) -> tuple[BooleanVector, ...]:
    """Forward sweep: masks of output-consistent states reachable step by step.

    The first mask is the class of the first output; each later mask is the
    class of its output intersected with the one-step image of the previous
    mask.  Once a mask is all-zero every later mask stays all-zero.
    """
    current = output_class(bcn, outputs[0])
    masks = [current]
    for i in outputs[1:]:
        current = output_class(bcn, i) & bcn.image(current)
        masks.append(current)
    return tuple(masks)


def _prune_backward(
    bcn: Bcn, caps: Sequence[BooleanVector], last: BooleanVector
) -> list[BooleanVector]:
    """Backward sweep: keep ``last`` at the end, then intersect each earlier
    cap with the preimage of its successor mask."""
    masks = [last]
    for cap in reversed(caps):
        masks.append(cap & bcn.preimage(masks[-1]))
    masks.reverse()
    return masks


def solve_finite(bcn: Bcn, ref: ReferenceTrajectory) -> FiniteTrackingSolution:
    """Decide trackability of a finite reference and locate all feasible states.

    An unsolvable instance is a verdict, not an error: the solution then
    carries empty sets, and ``initial_states`` still lists any states from
    which the (partially) trackable reference can be followed.
    """
    _check_reference(bcn, ref.outputs)
    candidates = forward_masks(bcn, ref.outputs)
    masks = tuple(_prune_backward(bcn, candidates[:-1], candidates[-1]))
    predecessors_of_entry = bcn.preimage(masks[0])
    solvable = masks[-1].any() and predecessors_of_entry.all()
    return FiniteTrackingSolution(
        candidate_masks=candidates,
        trajectory_masks=masks,
        state_sets=tuple(m.support() for m in masks),
        solvable_everywhere=solvable,
        initial_states=predecessors_of_entry.support(),
    )


@dataclass(frozen=True)
class PairTable:
    """Admissible state/input pairs, one sorted tuple of pairs per time slot.

    Slot t collects the pairs usable at time t: slot 0 ranges over every
    state, later slots only over states inside the corresponding trajectory
    mask.  Every pair's successor lies inside the next mask.
    """

    slots: tuple[tuple[tuple[int, int], ...], ...]

    def __len__(self) -> int:
        return len(self.slots)

    def pairs_at(self, t: int) -> tuple[tuple[int, int], ...]:
        self._check_slot(t)
        return self.slots[t]

    def states_at(self, t: int) -> tuple[int, ...]:
        """States with at least one admissible input at slot t, ascending."""
        self._check_slot(t)
        return tuple(sorted({state for state, _ in self.slots[t]}))

    def admissible_inputs(self, t: int, state: int) -> tuple[int, ...]:
        """Input indices admissible for ``state`` at slot t, ascending."""
        self._check_slot(t)
        return tuple(i for s, i in self.slots[t] if s == state)

    def restricted(self, length: int) -> "PairTable":
        return PairTable(self.slots[:length])

    def _check_slot(self, t: int) -> None:
        if not 0 <= t < len(self.slots):
            raise ValueError(f"time {t} out of range [0, {len(self.slots) - 1}]")


def compatible_pairs(bcn: Bcn, masks: Sequence[BooleanVector]) -> PairTable:
    """Tabulate the state/input pairs consistent with the surviving masks.

    ``masks`` is the backward-sweep output (time 1 first).  Slot 0 admits any
    state whose chosen successor lands in the first mask; slot t >= 1 admits
    only states inside mask t whose successor lands in mask t+1.
    """
    if not masks:
        raise ValueError("need at least one mask")
    n, m = bcn.num_states, bcn.num_inputs
    for mask in masks:
        if mask.dim != n:
            raise ValueError(f"mask dimension {mask.dim} does not match {n} states")
    slots = []
    for t, target in enumerate(masks):
        domain = range(1, n + 1) if t == 0 else masks[t - 1].support()
        pairs = tuple(
            (state, control)
            for state in domain
            for control in range(1, m + 1)
            if target.bits[bcn.step(state, control) - 1]
        )
        slots.append(pairs)
    return PairTable(tuple(slots))


def synthesize_finite(bcn: Bcn, table: PairTable, x0: int) -> tuple[int, ...]:
    """One tracking input sequence from ``x0``: smallest admissible input first.

    Raises :class:`TrackingInfeasible` when ``x0`` has no admissible first
    input, reporting the states that do.
    """
    state = x0
    sequence = []
    for t in range(len(table)):
        choices = table.admissible_inputs(t, state)
        if not choices:
            if t == 0:
                raise TrackingInfeasible(
                    f"state {x0} cannot track the reference",
                    feasible_states=table.states_at(0),
                )
            raise RuntimeError(
                f"inconsistent pair table: dead end at time {t} in state {state}"
            )
        sequence.append(choices[0])
        state = bcn.step(state, choices[0])
    return tuple(sequence)


@dataclass(frozen=True)
class SynthesisEnumeration:
    """All admissible input sequences, lexicographically ascending.

    ``truncated`` is set when the enumeration was cut off at the requested
    limit; the sequences kept are then the lexicographically smallest ones.
    """

    sequences: tuple[tuple[int, ...], ...]
    truncated: bool


def enumerate_finite(
    bcn: Bcn, table: PairTable, x0: int, limit: int = ENUMERATION_LIMIT
) -> SynthesisEnumeration:
    """Every input sequence that tracks the reference from ``x0``, capped."""
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if not table.admissible_inputs(0, x0):
        raise TrackingInfeasible(
            f"state {x0} cannot track the reference",
            feasible_states=table.states_at(0),
        )
    walks = _table_walks(bcn, table, 0, x0, len(table))
    kept = list(islice(walks, limit))
    truncated = next(walks, None) is not None
    return SynthesisEnumeration(tuple(kept), truncated)


def _table_walks(
    bcn: Bcn, table: PairTable, t: int, state: int, depth: int
) -> Iterator[tuple[int, ...]]:
    """Depth-first expansion of the pair table; slots wrap modulo the table."""
    if depth == 0:
        yield ()
        return
    for control in table.admissible_inputs(t % len(table), state):
        successor = bcn.step(state, control)
        for rest in _table_walks(bcn, table, t + 1, successor, depth - 1):
            yield (control, *rest)


def _check_reference(bcn: Bcn, outputs: Sequence[int]) -> None:
    for t, i in enumerate(outputs, start=1):
        if not 1 <= i <= bcn.num_outputs:
            raise ValueError(
                f"reference output {i} at time {t} out of range "
                f"[1, {bcn.num_outputs}]"
            )
