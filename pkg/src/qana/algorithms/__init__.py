"""Showcase algorithms and their classical baselines.

Quantum side: Grover amplitude amplification, the quantum Fourier
transform, period finding / factoring, and an eavesdrop-detection demo.
Classical side: linear search and trial division, plus comparison
reports that put the two resource counts side by side.
"""
from .classical import (
    ComparisonProblem,
    ComparisonReport,
    compare_factor,
    compare_search,
    linear_search,
    trial_division,
)
from .eavesdrop import DetectionReport, eavesdrop_demo
from .grover import (
    GroverReport,
    diffusion,
    grover_search,
    optimal_grover_iterations,
    phase_flip_oracle,
)
from .qft import dft_matrix, qft, qft_period_demo
from .shor import (
    FactorReport,
    ShorAttempt,
    ShorMode,
    continued_fraction_order,
    order_find_bruteforce,
    shor_factor,
)

__all__ = [
    "ComparisonProblem",
    "ComparisonReport",
    "DetectionReport",
    "FactorReport",
    "GroverReport",
    "ShorAttempt",
    "ShorMode",
    "compare_factor",
    "compare_search",
    "continued_fraction_order",
    "dft_matrix",
    "diffusion",
    "eavesdrop_demo",
    "grover_search",
    "linear_search",
    "optimal_grover_iterations",
    "order_find_bruteforce",
    "phase_flip_oracle",
    "qft",
    "qft_period_demo",
    "shor_factor",
    "trial_division",
]
