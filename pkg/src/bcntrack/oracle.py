"""Brute-force reference implementations, for testing the solvers against.

Nothing here shares traversal logic with the mask-based algorithms: the
finite check enumerates every input sequence outright, and the periodic check
prunes dead ends on an explicit (state, phase) product graph.  Both are
exponential or quadratic on purpose and guarded by an explicit work budget.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

import numpy as np

from .network import Bcn
from .stp import LogicalMatrix


class OracleBudgetExceeded(Exception):
    """The requested brute-force run is larger than the configured budget."""


def brute_finite_trackable(
    bcn: Bcn, outputs: Sequence[int], x0: int, budget: int = 1_000_000
) -> bool:
    """Exhaustively test whether some input sequence tracks ``outputs`` from x0."""
    horizon = len(outputs)
    n, m = bcn.num_states, bcn.num_inputs
    if m**horizon > budget:
        raise OracleBudgetExceeded(
            f"{m}^{horizon} input sequences exceed the budget of {budget}"
        )
    if not 1 <= x0 <= n:
        raise ValueError(f"state index {x0} out of range [1, {n}]")
    transition = bcn.transitions.col_index
    reading = bcn.output_map.col_index
    for sequence in product(range(1, m + 1), repeat=horizon):
        state = x0
        for t, control in enumerate(sequence):
            state = transition[(control - 1) * n + state - 1]
            if reading[state - 1] != outputs[t]:
                break
        else:
            return True
    return False


def brute_periodic_trackable_set(
    bcn: Bcn, outputs: Sequence[int], budget: int = 1_000_000
) -> tuple[int, ...]:
    """States from which the repeating output block is trackable forever.

    Builds the (state, time mod T) product graph whose edges require the
    target state to produce the output due at the target time, strips nodes
    with no outgoing edge until none are left to strip, and keeps the initial
    states with an edge into a surviving phase-1 node.
    """
    period = len(outputs)
    n, m = bcn.num_states, bcn.num_inputs
    if n * period > budget:
        raise OracleBudgetExceeded(
            f"{n} states x {period} phases exceed the budget of {budget}"
        )
    transition = bcn.transitions.col_index
    reading = bcn.output_map.col_index
    successor_sets = [
        {transition[(control - 1) * n + state - 1] for control in range(1, m + 1)}
        for state in range(1, n + 1)
    ]

    def due_output(phase: int) -> int:
        # phase = t mod T; the output due at time t is entry (t-1) mod T.
        return outputs[(phase - 1) % period]

    alive = {(state, phase) for state in range(1, n + 1) for phase in range(period)}
    rounds = 0
    while True:
        rounds += 1
        doomed = set()
        for state, phase in alive:
            nxt_phase = (phase + 1) % period
            nxt_out = due_output(nxt_phase)
            if not any(
                reading[s - 1] == nxt_out and (s, nxt_phase) in alive
                for s in successor_sets[state - 1]
            ):
                doomed.add((state, phase))
        if not doomed:
            break
        alive -= doomed
    assert rounds <= n * period + 1

    first_phase = 1 % period
    first_out = due_output(first_phase)
    trackable = [
        x0
        for x0 in range(1, n + 1)
        if any(
            reading[s - 1] == first_out and (s, first_phase) in alive
            for s in successor_sets[x0 - 1]
        )
    ]
    return tuple(trackable)


def random_bcn(
    rng: np.random.Generator, num_states: int, num_inputs: int, num_outputs: int
) -> Bcn:
    """Network with uniformly random transition and output columns."""
    transition_cols = rng.integers(1, num_states + 1, size=num_states * num_inputs)
    output_cols = rng.integers(1, num_outputs + 1, size=num_states)
    return Bcn(
        LogicalMatrix(num_states, tuple(int(c) for c in transition_cols)),
        LogicalMatrix(num_outputs, tuple(int(c) for c in output_cols)),
    )


def random_outputs(
    rng: np.random.Generator, num_outputs: int, length: int
) -> tuple[int, ...]:
    """Uniformly random output sequence; may contain unproducible values."""
    return tuple(int(i) for i in rng.integers(1, num_outputs + 1, size=length))
