"""Eavesdropper detection on basis-encoded check bits.

One qubit per check bit: the sender encodes a random bit in a random
basis (Z or X), an optional eavesdropper measures in a basis of their
own choosing, and the receiver measures in the sender's basis.  With no
interception the receiver always recovers the encoded bit; interception
in the wrong basis randomises the outcome, so roughly a quarter of the
check bits flip.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..statevector import (
    MeasurementBasis,
    Rng,
    apply_gate,
    h,
    measure,
    new_register,
    x,
)


@dataclass(frozen=True)
class DetectionReport:
    num_check_bits: int
    intercepted: bool
    mismatch_count: int
    mismatch_rate: float

    def to_dict(self) -> dict:
        return {
            "num_check_bits": self.num_check_bits,
            "intercepted": self.intercepted,
            "mismatch_count": self.mismatch_count,
            "mismatch_rate": self.mismatch_rate,
        }


def _prepare(bit: int, basis: MeasurementBasis):
    """Encode ``bit`` in ``basis`` on a fresh single-qubit register."""
    state = new_register(1)
    if bit:
        state = apply_gate(state, x(0))
    if basis is MeasurementBasis.X:
        state = apply_gate(state, h(0))
    return state


def eavesdrop_demo(num_check_bits: int, intercept: bool, rng: Rng) -> DetectionReport:
    if num_check_bits < 1:
        raise ValueError(f"need at least 1 check bit, got {num_check_bits}")
    bases = (MeasurementBasis.Z, MeasurementBasis.X)
    mismatches = 0
    for _ in range(num_check_bits):
        bit = rng.bit()
        basis = bases[rng.bit()]
        state = _prepare(bit, basis)
        if intercept:
            spy_basis = bases[rng.bit()]
            _, state = measure(state, 0, spy_basis, rng)
        outcome, _ = measure(state, 0, basis, rng)
        if outcome != bit:
            mismatches += 1
    return DetectionReport(
        num_check_bits=num_check_bits,
        intercepted=intercept,
        mismatch_count=mismatches,
        mismatch_rate=mismatches / num_check_bits,
    )
