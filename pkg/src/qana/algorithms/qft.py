"""Quantum Fourier transform built from H, controlled-phase and swaps.

On a list of k qubits the circuit realises the discrete Fourier
unitary F[j, k] = w^(jk) / sqrt(M) with w = exp(2*pi*i/M), M = 2**k.
``qubits[0]`` is the least-significant bit of the transformed index,
matching the register-wide convention.  The trailing qubit reversal is
done with CNOT-triple swaps so the whole construction stays inside the
simulator's gate set.
"""
from __future__ import annotations

import math

import numpy as np

from ..statevector import StateVector, apply_gate, cnot, cphase, h, new_register


def _swap(state: StateVector, a: int, b: int) -> StateVector:
    state = apply_gate(state, cnot(a, b))
    state = apply_gate(state, cnot(b, a))
    return apply_gate(state, cnot(a, b))


def qft(state: StateVector, qubits: list[int], inverse: bool = False) -> StateVector:
    """Apply the DFT unitary (or its inverse) to the listed qubits."""
    if len(set(qubits)) != len(qubits):
        raise IndexError(f"duplicate qubit indices {qubits}")
    for q in qubits:
        if not 0 <= q < state.num_qubits:
            raise IndexError(
                f"qubit index {q} out of range for {state.num_qubits}-qubit register"
            )
    k = len(qubits)
    sign = -1.0 if inverse else 1.0

    if inverse:
        # Mirror image of the forward circuit: swaps first, then the
        # rotation ladder in reverse order with negated angles.
        for i in range(k // 2):
            state = _swap(state, qubits[i], qubits[k - 1 - i])
        for j in range(k):
            for m in range(j):
                state = apply_gate(
                    state, cphase(sign * math.pi / (1 << (j - m)), qubits[m], qubits[j])
                )
            state = apply_gate(state, h(qubits[j]))
        return state

    for j in reversed(range(k)):
        state = apply_gate(state, h(qubits[j]))
        for m in reversed(range(j)):
            state = apply_gate(
                state, cphase(sign * math.pi / (1 << (j - m)), qubits[m], qubits[j])
            )
    for i in range(k // 2):
        state = _swap(state, qubits[i], qubits[k - 1 - i])
    return state


def dft_matrix(num_qubits: int) -> np.ndarray:
    """Explicit M x M DFT matrix, the reference the circuit is tested against."""
    m = 1 << num_qubits
    j, k = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    return np.exp(2j * math.pi * j * k / m) / math.sqrt(m)


def qft_period_demo(num_qubits: int, period: int) -> np.ndarray:
    """Fourier-transform a comb of basis states spaced ``period`` apart.

    Returns the outcome distribution over all 2**n indices; its support
    lands exactly on multiples of 2**n / period, which is the frequency
    readout trick period finding is built on.
    """
    m = 1 << num_qubits
    if period < 1 or m % period != 0:
        raise ValueError(f"period {period} must divide 2**{num_qubits} = {m}")
    state = new_register(num_qubits)
    count = m // period
    amps = np.zeros(m, dtype=complex)
    amps[::period] = 1.0 / math.sqrt(count)
    state = StateVector(num_qubits, amps)
    state = qft(state, list(range(num_qubits)))
    return np.abs(state.amps) ** 2
