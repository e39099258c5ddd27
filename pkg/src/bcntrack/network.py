"""Boolean control network in algebraic form.

A network over N state values, M input values, and P output values is a pair
of logical matrices: an N x (N*M) transition matrix whose i-th N-column block
maps states under input value i, and a P x N output matrix.  The class caches
the entrywise OR of the blocks (the adjacency matrix of all one-step
transitions under some input) and answers successor, predecessor, and
multi-step reachability queries from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .stp import BooleanMatrix, BooleanVector, LogicalMatrix, LogicalVector, stp_logical


@dataclass(frozen=True)
class StateInputTrajectory:
    """A simulated run: states x(0..k), inputs u(0..k-1), outputs y(0..k)."""

    states: tuple[LogicalVector, ...]
    inputs: tuple[LogicalVector, ...]
    outputs: tuple[LogicalVector, ...]

    @property
    def state_indices(self) -> tuple[int, ...]:
        return tuple(x.index for x in self.states)

    @property
    def input_indices(self) -> tuple[int, ...]:
        return tuple(u.index for u in self.inputs)

    @property
    def output_indices(self) -> tuple[int, ...]:
        return tuple(y.index for y in self.outputs)


class Bcn:
    """Boolean control network (transition matrix, output matrix).

    The number of input values is derived from the transition matrix width,
    which must be an exact multiple of the state count.  Dimensions need not
    be powers of two; the file loader warns when they are not, but every
    algorithm here only relies on the algebraic form.
    """

    __slots__ = ("transitions", "output_map", "_l_tot", "_l_tot_t", "_powers")

    def __init__(self, transitions: LogicalMatrix, output_map: LogicalMatrix):
        n = transitions.rows
        if transitions.cols % n != 0:
            raise ValueError(
                f"transition matrix width {transitions.cols} is not a multiple "
                f"of the state count {n}"
            )
        if output_map.cols != n:
            raise ValueError(
                f"output matrix has {output_map.cols} columns, expected {n}"
            )
        self.transitions = transitions
        self.output_map = output_map
        self._l_tot = self._combine_blocks()
        self._l_tot_t = self._l_tot.transpose()
        self._powers: dict[int, BooleanMatrix] = {1: self._l_tot}

    def _combine_blocks(self) -> BooleanMatrix:
        combined = self.subsystem(1).to_boolean()
        for i in range(2, self.num_inputs + 1):
            combined = combined | self.subsystem(i).to_boolean()
        return combined

    @property
    def num_states(self) -> int:
        return self.transitions.rows

    @property
    def num_inputs(self) -> int:
        return self.transitions.cols // self.transitions.rows

    @property
    def num_outputs(self) -> int:
        return self.output_map.rows

    @property
    def l_tot(self) -> BooleanMatrix:
        """Adjacency matrix of all one-step transitions under some input."""
        return self._l_tot

    def subsystem(self, i: int) -> LogicalMatrix:
        """Transition matrix of the subnetwork driven by the constant input i."""
        n, m = self.num_states, self.num_inputs
        if not 1 <= i <= m:
            raise ValueError(f"input index {i} out of range [1, {m}]")
        return LogicalMatrix(n, self.transitions.col_index[(i - 1) * n : i * n])

    def step(self, state: int, control: int) -> int:
        """Successor state index under one input value."""
        n = self.num_states
        self._check_state(state)
        self._check_input(control)
        return self.transitions.col_index[(control - 1) * n + state - 1]

    def output_of(self, state: int) -> int:
        self._check_state(state)
        return self.output_map.col_index[state - 1]

    def successors(self, state: int) -> tuple[int, ...]:
        """States reachable from ``state`` in one step under some input, ascending."""
        self._check_state(state)
        return self._l_tot.column(state).support()

    def predecessors(self, state: int) -> tuple[int, ...]:
        """States that reach ``state`` in one step under some input, ascending."""
        self._check_state(state)
        return self._l_tot_t.column(state).support()

    def image(self, mask: BooleanVector) -> BooleanVector:
        """One-step successors of a set of states, as a 0/1 mask."""
        return self._l_tot.matvec(mask)

    def preimage(self, mask: BooleanVector) -> BooleanVector:
        """States with at least one successor inside ``mask``, as a 0/1 mask."""
        return self._l_tot_t.matvec(mask)

    def l_tot_power(self, k: int) -> BooleanMatrix:
        """k-th semiring power of the transition adjacency matrix, memoized."""
        if k < 1:
            raise ValueError(f"exponent must be >= 1, got {k}")
        cached = self._powers.get(k)
        if cached is None:
            cached = self.l_tot_power(k - 1).matmul(self._l_tot)
            self._powers[k] = cached
        return cached

    def reachable_in_k(self, target: int, source: int, k: int) -> bool:
        """True iff ``target`` is reachable from ``source`` in exactly k steps.

        Computed by k one-step image sweeps from the source, which beats
        forming full matrix powers for one-off queries.
        """
        self._check_state(target)
        self._check_state(source)
        if k < 1:
            raise ValueError(f"step count must be >= 1, got {k}")
        front = BooleanVector.from_indices(self.num_states, (source,))
        for _ in range(k):
            front = self.image(front)
        return bool(front.bits[target - 1])

    def set_reachable_in_k(self, targets: Iterable[int], source: int, k: int) -> bool:
        """True iff at least one of ``targets`` is reachable in exactly k steps."""
        targets = tuple(targets)
        if not targets:
            raise ValueError("target set must be non-empty")
        for t in targets:
            self._check_state(t)
        self._check_state(source)
        if k < 1:
            raise ValueError(f"step count must be >= 1, got {k}")
        front = BooleanVector.from_indices(self.num_states, (source,))
        for _ in range(k):
            front = self.image(front)
        return any(front.bits[t - 1] for t in targets)

    def simulate(
        self, x0: LogicalVector, inputs: Sequence[LogicalVector]
    ) -> StateInputTrajectory:
        """Run the network from ``x0``, reading the output at every step."""
        if x0.dim != self.num_states:
            raise ValueError(
                f"initial state has dimension {x0.dim}, expected {self.num_states}"
            )
        states = [x0]
        outputs = [self._read_output(x0)]
        for t, u in enumerate(inputs):
            if u.dim != self.num_inputs:
                raise ValueError(
                    f"input at step {t} has dimension {u.dim}, "
                    f"expected {self.num_inputs}"
                )
            nxt = stp_logical(self.transitions, u, states[-1])
            states.append(nxt)
            outputs.append(self._read_output(nxt))
        return StateInputTrajectory(tuple(states), tuple(inputs), tuple(outputs))

    def _read_output(self, x: LogicalVector) -> LogicalVector:
        return LogicalVector(self.num_outputs, self.output_map.col_index[x.index - 1])

    def _check_state(self, j: int) -> None:
        if not 1 <= j <= self.num_states:
            raise ValueError(f"state index {j} out of range [1, {self.num_states}]")

    def _check_input(self, i: int) -> None:
        if not 1 <= i <= self.num_inputs:
            raise ValueError(f"input index {i} out of range [1, {self.num_inputs}]")

    def __repr__(self) -> str:
        return (
            f"Bcn(states={self.num_states}, inputs={self.num_inputs}, "
            f"outputs={self.num_outputs})"
        )
