"""Period-finding factorisation at desk scale.

Two modes share the same accept/reject post-processing:

* ``FULL_CIRCUIT`` runs real quantum phase estimation on the simulator:
  a work register of ceil(log2 N) qubits, twice that many counting
  qubits, controlled modular multiplication, inverse QFT, measurement,
  then continued fractions.  Feasible for N up to about 21 under the
  20-qubit cap.
* ``HYBRID`` swaps the quantum order-finding step for the brute-force
  classical oracle so larger teaching examples (N = 143) stay runnable.

Controlled modular multiplication is applied as a direct index
permutation of the work register: multiplying by a unit mod N is a
bijection on 0..N-1 (identity above), so unitarity is preserved without
a gate-level decomposition.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..statevector import (
    MeasurementBasis,
    Rng,
    StateVector,
    apply_gate,
    h,
    measure,
    new_register,
    x,
)
from .qft import qft

#: Random base values tried before a run reports failure.
MAX_ATTEMPTS = 32


class ShorMode(Enum):
    FULL_CIRCUIT = "full"
    HYBRID = "hybrid"


@dataclass(frozen=True)
class ShorAttempt:
    a: int
    order_r: int | None
    accepted: bool
    reason: str

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "order_r": self.order_r,
            "accepted": self.accepted,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class FactorReport:
    n: int
    mode: ShorMode
    attempts: tuple[ShorAttempt, ...]
    factors: tuple[int, int] | None
    counting_qubits: int | None

    def to_dict(self) -> dict:
        return {
            "N": self.n,
            "mode": self.mode.value,
            "attempts": [a.to_dict() for a in self.attempts],
            "factors": list(self.factors) if self.factors else None,
            "counting_qubits": self.counting_qubits,
        }


def order_find_bruteforce(a: int, n: int) -> int:
    """Smallest r >= 1 with a**r = 1 (mod n); the classical oracle."""
    if not 1 < a < n:
        raise ValueError(f"base must satisfy 1 < a < N, got a={a}, N={n}")
    if math.gcd(a, n) != 1:
        raise ValueError(f"base {a} shares a factor with {n}")
    r, value = 1, a % n
    while value != 1:
        value = (value * a) % n
        r += 1
    return r


def continued_fraction_order(measured: int, num_counting_qubits: int, n: int) -> int | None:
    """Largest convergent denominator <= N of measured / 2**t, or None for 0.

    The convergents of the continued-fraction expansion of the measured
    phase are the candidate orders; the caller still has to verify the
    candidate against a**r = 1 (mod N).
    """
    if not 0 <= measured < (1 << num_counting_qubits):
        raise ValueError(
            f"measured value {measured} out of range for {num_counting_qubits} counting qubits"
        )
    if measured == 0:
        return None
    num, den = measured, 1 << num_counting_qubits
    # Convergent denominators via the standard recurrence k_i = a_i*k_{i-1} + k_{i-2}.
    k_prev, k_curr = 1, 0
    best: int | None = None
    while den != 0:
        quotient, remainder = divmod(num, den)
        k_prev, k_curr = k_curr, quotient * k_curr + k_prev
        if 1 <= k_curr <= n:
            best = max(best or 1, k_curr)
        num, den = den, remainder
    return best


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _is_prime_power(n: int) -> bool:
    for b in range(2, n.bit_length() + 1):
        root = round(n ** (1.0 / b))
        for candidate in (root - 1, root, root + 1):
            if candidate >= 2 and candidate**b == n:
                return True
    return False


def _controlled_modmul(
    state: StateVector, control: int, multiplier: int, modulus: int, work_bits: int
) -> StateVector:
    """Map |y> -> |y*multiplier mod N> on the work register when control is 1.

    Work register lives on qubits [0, work_bits); indices y >= N are
    untouched, keeping the permutation a bijection.
    """
    idx = np.arange(state.dim, dtype=np.intp)
    work = idx & ((1 << work_bits) - 1)
    controlled = (idx >> control) & 1 == 1
    mapped = (work * multiplier) % modulus
    target = np.where(
        controlled & (work < modulus), (idx & ~np.intp((1 << work_bits) - 1)) | mapped, idx
    )
    amps = np.empty_like(state.amps)
    amps[target] = state.amps
    return StateVector(state.num_qubits, amps)


def _qpe_order_candidate(a: int, n: int, rng: Rng) -> tuple[int | None, int]:
    """One quantum phase estimation shot; returns (candidate order, counting qubits)."""
    work_bits = n.bit_length()
    counting_bits = 2 * work_bits
    state = new_register(work_bits + counting_bits)
    state = apply_gate(state, x(0))  # work register starts in |1>
    counting = list(range(work_bits, work_bits + counting_bits))
    for q in counting:
        state = apply_gate(state, h(q))
    for j, q in enumerate(counting):
        state = _controlled_modmul(state, q, pow(a, 1 << j, n), n, work_bits)
    state = qft(state, counting, inverse=True)
    measured = 0
    for j, q in enumerate(counting):
        outcome, state = measure(state, q, MeasurementBasis.Z, rng)
        measured |= outcome << j
    return continued_fraction_order(measured, counting_bits, n), counting_bits


def shor_factor(
    n: int, mode: ShorMode = ShorMode.HYBRID, rng: Rng | None = None, max_attempts: int = MAX_ATTEMPTS
) -> FactorReport:
    """Factor an odd composite by order finding; deterministic given the rng.

    Each attempt draws a random base a in [2, N-2].  A shared factor
    gcd(a, N) > 1 short-circuits the attempt; otherwise the order r of a
    is obtained (per mode) and accepted when r is even and a**(r/2) is a
    non-trivial square root of 1, which splits N as gcd(a**(r/2) +- 1, N).
    """
    if rng is None:
        rng = Rng(0)
    if n < 15:
        raise ValueError(f"modulus must be at least 15, got {n}")
    if n % 2 == 0:
        raise ValueError(f"modulus must be odd, got {n}")
    if _is_prime(n):
        raise ValueError(f"modulus must be composite, got prime {n}")
    if _is_prime_power(n):
        raise ValueError(f"modulus must not be a prime power, got {n}")
    counting_bits: int | None = None
    if mode is ShorMode.FULL_CIRCUIT:
        from ..statevector import MAX_QUBITS

        needed = 3 * n.bit_length()
        if needed > MAX_QUBITS:
            raise ValueError(
                f"full-circuit mode for N={n} needs {needed} qubits, over the {MAX_QUBITS}-qubit cap"
            )
        counting_bits = 2 * n.bit_length()

    attempts: list[ShorAttempt] = []
    factors: tuple[int, int] | None = None
    for _ in range(max_attempts):
        a = rng.randint(2, n - 2)
        g = math.gcd(a, n)
        if g > 1:
            factors = (min(g, n // g), max(g, n // g))
            attempts.append(ShorAttempt(a, None, True, "shared factor found by gcd"))
            break
        if mode is ShorMode.FULL_CIRCUIT:
            candidate, _ = _qpe_order_candidate(a, n, rng)
            if candidate is None:
                attempts.append(ShorAttempt(a, None, False, "phase readout carried no information"))
                continue
            if pow(a, candidate, n) != 1:
                attempts.append(
                    ShorAttempt(a, candidate, False, "candidate order failed verification")
                )
                continue
            r = candidate
        else:
            r = order_find_bruteforce(a, n)
        if r % 2 == 1:
            attempts.append(ShorAttempt(a, r, False, "order is odd"))
            continue
        half = pow(a, r // 2, n)
        # half == 1 can only happen when r overshoots the true order
        if half == n - 1 or half == 1:
            attempts.append(ShorAttempt(a, r, False, "trivial square root of 1"))
            continue
        p = math.gcd(half - 1, n)
        q = math.gcd(half + 1, n)
        factors = (min(p, q), max(p, q))
        attempts.append(ShorAttempt(a, r, True, "even order with non-trivial square root"))
        break

    return FactorReport(
        n=n,
        mode=mode,
        attempts=tuple(attempts),
        factors=factors,
        counting_qubits=counting_bits if mode is ShorMode.FULL_CIRCUIT else None,
    )
