"""Grover search over a padded power-of-two index space.

Search spaces that are not powers of two are padded up to the next
power of two; padded indices are never marked, so they behave as
ordinary non-solutions.  Because the oracle and diffusion operator are
real, the full amplitude history of the marked index can be read
straight off the statevector - no sampling involved.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..statevector import StateVector, apply_gate, h, new_register


@dataclass(frozen=True)
class GroverReport:
    """Everything a lesson needs to animate one search run."""

    search_space_size: int
    padded_size: int
    marked_index: int
    iterations_run: int
    marked_amplitude_trace: tuple[float, ...]
    final_success_probability: float
    #: ceil(sqrt(N)): the headline query count quoted in the lessons.
    #: The tighter floor(pi/4 * sqrt(N')) iteration count is reported
    #: separately because the two are often conflated.
    pedagogical_query_count: int
    optimal_iterations: int = field(default=0)

    def to_dict(self) -> dict:
        return {
            "search_space_size": self.search_space_size,
            "padded_size": self.padded_size,
            "marked_index": self.marked_index,
            "iterations_run": self.iterations_run,
            "marked_amplitude_trace": list(self.marked_amplitude_trace),
            "final_success_probability": self.final_success_probability,
            "pedagogical_query_count": self.pedagogical_query_count,
            "optimal_iterations": self.optimal_iterations,
        }


def _padded_size(n_items: int) -> int:
    return 1 << max(1, (n_items - 1).bit_length())


def optimal_grover_iterations(n_items: int) -> int:
    """floor(pi/4 * sqrt(N')) with N' the next power of two >= N, at least 1."""
    if n_items < 2:
        raise ValueError(f"search space must hold at least 2 items, got {n_items}")
    return max(1, math.floor(math.pi / 4.0 * math.sqrt(_padded_size(n_items))))


def phase_flip_oracle(state: StateVector, marked: int) -> StateVector:
    """Flip the sign of the marked basis amplitude."""
    amps = state.amps.copy()
    amps[marked] = -amps[marked]
    return StateVector(state.num_qubits, amps)


def diffusion(state: StateVector) -> StateVector:
    """Inversion about the mean amplitude: 2|s><s| - I for uniform |s>."""
    mean = state.amps.mean()
    return StateVector(state.num_qubits, 2.0 * mean - state.amps)


def grover_search(
    n_items: int, marked: int, iterations: int | None = None
) -> GroverReport:
    """Amplify the marked index and record its amplitude after each iteration."""
    if n_items < 2:
        raise ValueError(f"search space must hold at least 2 items, got {n_items}")
    if not 0 <= marked < n_items:
        raise ValueError(f"marked index {marked} out of range for {n_items} items")
    optimal = optimal_grover_iterations(n_items)
    if iterations is None:
        iterations = optimal
    if iterations < 0:
        raise ValueError(f"iteration count must be non-negative, got {iterations}")

    padded = _padded_size(n_items)
    num_qubits = padded.bit_length() - 1
    state = new_register(num_qubits)
    for q in range(num_qubits):
        state = apply_gate(state, h(q))

    trace: list[float] = []
    for _ in range(iterations):
        state = phase_flip_oracle(state, marked)
        state = diffusion(state)
        trace.append(float(state.amps[marked].real))

    if trace:
        final_probability = trace[-1] ** 2
    else:
        final_probability = float(np.abs(state.amps[marked]) ** 2)
    return GroverReport(
        search_space_size=n_items,
        padded_size=padded,
        marked_index=marked,
        iterations_run=iterations,
        marked_amplitude_trace=tuple(trace),
        final_success_probability=final_probability,
        pedagogical_query_count=math.ceil(math.sqrt(n_items)),
        optimal_iterations=optimal,
    )
