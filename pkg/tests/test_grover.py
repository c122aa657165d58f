"""Grover search: iteration counts, amplitude traces, success probabilities."""
from __future__ import annotations

import math

import numpy as np
import pytest

from qana.algorithms import (
    GroverReport,
    diffusion,
    grover_search,
    optimal_grover_iterations,
    phase_flip_oracle,
)
from qana.statevector import StateVector, apply_gate, h, new_register


def closed_form_amplitude(iterations: int, padded_size: int) -> float:
    theta = math.asin(1.0 / math.sqrt(padded_size))
    return math.sin((2 * iterations + 1) * theta)


class TestIterationCount:
    def test_reference_values(self):
        assert optimal_grover_iterations(4) == 1
        assert optimal_grover_iterations(1024) == 25
        assert optimal_grover_iterations(2) == 1

    def test_padding_uses_next_power_of_two(self):
        assert optimal_grover_iterations(1000) == optimal_grover_iterations(1024)
        assert optimal_grover_iterations(3) == optimal_grover_iterations(4)

    def test_at_least_one(self):
        for n in range(2, 9):
            assert optimal_grover_iterations(n) >= 1

    def test_too_small_search_space(self):
        with pytest.raises(ValueError, match="at least 2"):
            optimal_grover_iterations(1)


class TestOperators:
    def test_oracle_flips_only_marked_sign(self):
        state = new_register(3)
        for q in range(3):
            state = apply_gate(state, h(q))
        flipped = phase_flip_oracle(state, 5)
        assert flipped.amps[5] == pytest.approx(-state.amps[5])
        for i in range(8):
            if i != 5:
                assert flipped.amps[i] == pytest.approx(state.amps[i])

    def test_oracle_is_an_involution(self):
        rng = np.random.default_rng(5)
        amps = rng.normal(size=8) + 1j * rng.normal(size=8)
        amps /= np.linalg.norm(amps)
        state = StateVector(3, amps)
        twice = phase_flip_oracle(phase_flip_oracle(state, 2), 2)
        np.testing.assert_allclose(twice.amps, state.amps, atol=1e-15)

    def test_diffusion_preserves_norm(self):
        rng = np.random.default_rng(9)
        amps = rng.normal(size=16) + 1j * rng.normal(size=16)
        amps /= np.linalg.norm(amps)
        out = diffusion(StateVector(4, amps))
        assert out.norm_squared() == pytest.approx(1.0, abs=1e-12)

    def test_diffusion_fixes_uniform_state(self):
        state = new_register(3)
        for q in range(3):
            state = apply_gate(state, h(q))
        out = diffusion(state)
        np.testing.assert_allclose(out.amps, state.amps, atol=1e-12)


class TestSearch:
    def test_four_items_one_iteration_exact(self):
        for marked in range(4):
            report = grover_search(4, marked)
            assert report.iterations_run == 1
            assert abs(report.final_success_probability - 1.0) < 1e-12

    def test_1024_items_matches_closed_form(self):
        report = grover_search(1024, 3)
        assert report.iterations_run == 25
        assert report.final_success_probability >= 0.999
        expected = closed_form_amplitude(25, 1024) ** 2
        assert report.final_success_probability == pytest.approx(expected, abs=1e-9)

    def test_trace_follows_closed_form(self):
        report = grover_search(256, 17)
        for k, amplitude in enumerate(report.marked_amplitude_trace):
            assert amplitude == pytest.approx(closed_form_amplitude(k + 1, 256), abs=1e-9)

    def test_matrix_oracle_agreement(self):
        # independent dense construction of one grover iteration
        n_prime, marked, iterations = 16, 11, 3
        oracle = np.eye(n_prime)
        oracle[marked, marked] = -1.0
        diffusion_matrix = 2.0 * np.full((n_prime, n_prime), 1.0 / n_prime) - np.eye(n_prime)
        vec = np.full(n_prime, 1.0 / math.sqrt(n_prime))
        expected = []
        for _ in range(iterations):
            vec = diffusion_matrix @ (oracle @ vec)
            expected.append(vec[marked])
        report = grover_search(16, marked, iterations=iterations)
        np.testing.assert_allclose(report.marked_amplitude_trace, expected, atol=1e-10)

    def test_trace_length_equals_iterations_run(self):
        for iterations in (0, 1, 4, 9):
            report = grover_search(64, 5, iterations=iterations)
            assert report.iterations_run == iterations
            assert len(report.marked_amplitude_trace) == iterations

    def test_final_probability_is_last_trace_entry_squared(self):
        report = grover_search(128, 77)
        assert report.final_success_probability == pytest.approx(
            report.marked_amplitude_trace[-1] ** 2, abs=1e-12
        )

    def test_zero_iterations_leaves_uniform_probability(self):
        report = grover_search(8, 1, iterations=0)
        assert report.marked_amplitude_trace == ()
        assert report.final_success_probability == pytest.approx(1.0 / 8.0, abs=1e-12)

    def test_non_power_of_two_is_padded(self):
        report = grover_search(1000, 999)
        assert report.padded_size == 1024
        assert report.iterations_run == 25
        assert report.final_success_probability >= 0.999
        assert report.pedagogical_query_count == 32

    def test_pedagogical_count_is_ceil_sqrt(self):
        assert grover_search(4, 0).pedagogical_query_count == 2
        assert grover_search(1024, 0).pedagogical_query_count == 32
        assert grover_search(5, 0).pedagogical_query_count == 3

    def test_amplitude_grows_monotonically_up_to_optimum(self):
        report = grover_search(1024, 500)
        trace = report.marked_amplitude_trace
        assert all(later > earlier for earlier, later in zip(trace, trace[1:]))

    def test_overrotation_past_optimum_decays(self):
        optimum = optimal_grover_iterations(64)
        over = grover_search(64, 3, iterations=2 * optimum)
        best = grover_search(64, 3, iterations=optimum)
        assert over.final_success_probability < best.final_success_probability

    def test_bad_parameters(self):
        with pytest.raises(ValueError, match="at least 2"):
            grover_search(1, 0)
        with pytest.raises(ValueError, match="out of range"):
            grover_search(8, 8)
        with pytest.raises(ValueError, match="non-negative"):
            grover_search(8, 0, iterations=-1)

    def test_to_dict_round_trip(self):
        report = grover_search(16, 2)
        data = report.to_dict()
        assert data["search_space_size"] == 16
        assert data["padded_size"] == 16
        assert data["marked_index"] == 2
        assert data["iterations_run"] == report.iterations_run
        assert data["marked_amplitude_trace"] == list(report.marked_amplitude_trace)
        assert data["optimal_iterations"] == report.optimal_iterations
        assert isinstance(report, GroverReport)
