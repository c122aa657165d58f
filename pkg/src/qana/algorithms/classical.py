"""Classical baselines and the classical-vs-quantum comparison reports.

These are the honest head-to-head numbers the lessons lean on: a linear
scan really does cost N comparisons in the worst case, and trial
division really does grind through divisors one at a time.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from ..statevector import Rng
from .grover import optimal_grover_iterations
from .shor import ShorMode, shor_factor


class ComparisonProblem(Enum):
    SEARCH = "search"
    FACTOR = "factor"


@dataclass(frozen=True)
class ComparisonReport:
    problem: ComparisonProblem
    instance_size: int
    classical_steps: int
    quantum_resource: int
    quantum_resource_kind: str
    #: For search: the tighter floor(pi/4*sqrt(N')) count, reported next
    #: to the headline ceil(sqrt(N)) so the two are never conflated.
    optimal_iterations: int | None = None

    def to_dict(self) -> dict:
        return {
            "problem": self.problem.value,
            "instance_size": self.instance_size,
            "classical_steps": self.classical_steps,
            "quantum_resource": self.quantum_resource,
            "quantum_resource_kind": self.quantum_resource_kind,
            "optimal_iterations": self.optimal_iterations,
        }


def linear_search(
    items_count: int, target: int, rng: Rng, order: list[int] | None = None
) -> tuple[int, int]:
    """Scan a shuffled index sequence for ``target``.

    Returns (position found, comparisons made); comparisons are 1-based,
    worst case N.  ``order`` overrides the seeded shuffle so adversarial
    layouts can be demonstrated.
    """
    if not 0 <= target < items_count:
        raise ValueError(f"target {target} out of range for {items_count} items")
    if order is None:
        order = rng.permutation(items_count)
    for position, value in enumerate(order):
        if value == target:
            return position, position + 1
    raise ValueError(f"target {target} missing from scan order")


def trial_division(n: int) -> tuple[list[int], int]:
    """Full prime factorisation by ascending trial division.

    Returns (prime factors in ascending order, with multiplicity) and
    the number of divisibility tests performed.
    """
    if n < 2:
        raise ValueError(f"need an integer >= 2, got {n}")
    factors: list[int] = []
    trials = 0
    remaining = n
    divisor = 2
    while divisor * divisor <= remaining:
        trials += 1
        if remaining % divisor == 0:
            factors.append(divisor)
            remaining //= divisor
        else:
            divisor += 1
    if remaining > 1:
        factors.append(remaining)
    return factors, trials


def compare_search(items_count: int) -> ComparisonReport:
    """Worst-case classical scan vs the square-root query count."""
    if items_count < 2:
        raise ValueError(f"search space must hold at least 2 items, got {items_count}")
    return ComparisonReport(
        problem=ComparisonProblem.SEARCH,
        instance_size=items_count,
        classical_steps=items_count,
        quantum_resource=math.ceil(math.sqrt(items_count)),
        quantum_resource_kind="Grover queries (pedagogical)",
        optimal_iterations=optimal_grover_iterations(items_count),
    )


def compare_factor(n: int, rng: Rng | None = None) -> ComparisonReport:
    """Trial-division tests vs order-finding calls for the same modulus."""
    _, trials = trial_division(n)
    report = shor_factor(n, ShorMode.HYBRID, rng or Rng(0))
    order_calls = sum(1 for a in report.attempts if a.order_r is not None)
    return ComparisonReport(
        problem=ComparisonProblem.FACTOR,
        instance_size=n,
        classical_steps=max(1, trials),
        quantum_resource=max(1, order_calls),
        quantum_resource_kind="order-finding calls",
    )
