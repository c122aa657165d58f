"""Dense statevector simulation of small qubit registers.

Conventions, fixed once and relied on everywhere:

* Qubit 0 is the least-significant bit of the basis-state index, so the
  amplitude at index 5 (binary 101) belongs to qubit 0 = 1, qubit 1 = 0,
  qubit 2 = 1.
* Global phase is never normalised away; everything user-facing
  (probabilities, Bloch vectors) is phase-invariant by construction.
* Bloch axes: |0> -> +z, |1> -> -z, |+> -> +x, |i> -> +y.  The +y
  assignment for |i> is a convention, documented here and in the README.
* States are renormalised only after measurement collapse, so norm drift
  from gate arithmetic stays observable in tests.

States are immutable at the API level: every operation returns a new
StateVector and never mutates its input, so values are safe to share
read-only between threads.  A single Rng, however, must not be used
concurrently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

#: Hard size cap.  2**20 complex amplitudes (~16 MiB) keeps a runaway
#: lesson circuit from eating all memory on a teaching machine.
MAX_QUBITS = 20

_SQRT1_2 = 1.0 / math.sqrt(2.0)
_U64_MASK = 0xFFFFFFFFFFFFFFFF


class Rng:
    """Reproducible random stream for measurement sampling.

    Backed by the counter-based philox4x64 bit generator (algorithm id
    ``philox4x64-numpy``), so the same seed yields the same outcome
    stream bit-for-bit on every platform and run.
    """

    ALGORITHM = "philox4x64-numpy"

    def __init__(self, seed: int):
        self.seed = int(seed) & _U64_MASK
        self._gen = np.random.Generator(np.random.Philox(key=self.seed))

    def random(self) -> float:
        """Uniform float in [0, 1)."""
        return float(self._gen.random())

    def randint(self, low: int, high: int) -> int:
        """Uniform integer in [low, high], both ends included."""
        return int(self._gen.integers(low, high, endpoint=True))

    def bit(self) -> int:
        return int(self._gen.integers(0, 2))

    def permutation(self, n: int) -> list[int]:
        return [int(v) for v in self._gen.permutation(n)]

    def __repr__(self) -> str:  # pragma: no cover
        return f"Rng(seed={self.seed})"


class GateKind(Enum):
    """Supported gate families.  Values double as DSL mnemonics."""

    X = "x"
    Y = "y"
    Z = "z"
    H = "h"
    PHASE = "phase"
    CPHASE = "cphase"
    CNOT = "cnot"
    TOFFOLI = "toffoli"


#: Number of control qubits each kind expects.
_NUM_CONTROLS = {
    GateKind.X: 0,
    GateKind.Y: 0,
    GateKind.Z: 0,
    GateKind.H: 0,
    GateKind.PHASE: 0,
    GateKind.CPHASE: 1,
    GateKind.CNOT: 1,
    GateKind.TOFFOLI: 2,
}

_PARAMETRIC = {GateKind.PHASE, GateKind.CPHASE}


class MeasurementBasis(Enum):
    """The two supported measurement bases.

    Z distinguishes |0> from |1| (outcome bits 0/1); X distinguishes
    |+> from |-> (outcome 0 encodes "+", outcome 1 encodes "-").
    """

    Z = "z"
    X = "x"


@dataclass(frozen=True)
class GateSpec:
    """A named unitary applied to one target qubit, with optional controls.

    ``theta`` (radians) is required for PHASE and CPHASE, forbidden
    otherwise.
    """

    kind: GateKind
    targets: tuple[int, ...]
    controls: tuple[int, ...] = ()
    theta: float | None = None

    def qubits(self) -> tuple[int, ...]:
        return self.controls + self.targets


def x(q: int) -> GateSpec:
    return GateSpec(GateKind.X, (q,))


def y(q: int) -> GateSpec:
    return GateSpec(GateKind.Y, (q,))


def z(q: int) -> GateSpec:
    return GateSpec(GateKind.Z, (q,))


def h(q: int) -> GateSpec:
    return GateSpec(GateKind.H, (q,))


def phase(theta: float, q: int) -> GateSpec:
    return GateSpec(GateKind.PHASE, (q,), theta=theta)


def cphase(theta: float, control: int, target: int) -> GateSpec:
    return GateSpec(GateKind.CPHASE, (target,), (control,), theta)


def cnot(control: int, target: int) -> GateSpec:
    return GateSpec(GateKind.CNOT, (target,), (control,))


def toffoli(control1: int, control2: int, target: int) -> GateSpec:
    return GateSpec(GateKind.TOFFOLI, (target,), (control1, control2))


def base_matrix(kind: GateKind, theta: float | None = None) -> np.ndarray:
    """2x2 unitary acting on the target qubit (controls handled separately)."""
    if kind in _PARAMETRIC:
        if theta is None:
            raise ValueError(f"{kind.value} gate requires an angle")
        return np.array([[1, 0], [0, np.exp(1j * theta)]], dtype=complex)
    if theta is not None:
        raise ValueError(f"{kind.value} gate takes no angle")
    if kind is GateKind.H:
        return np.array([[_SQRT1_2, _SQRT1_2], [_SQRT1_2, -_SQRT1_2]], dtype=complex)
    if kind in (GateKind.X, GateKind.CNOT, GateKind.TOFFOLI):
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if kind is GateKind.Y:
        return np.array([[0, -1j], [1j, 0]], dtype=complex)
    if kind is GateKind.Z:
        return np.array([[1, 0], [0, -1]], dtype=complex)
    raise ValueError(f"unknown gate kind {kind!r}")


@dataclass(frozen=True, eq=False)
class StateVector:
    """2**num_qubits complex amplitudes of an n-qubit register.

    Treat instances as immutable: operations in this module never write
    to ``amps`` after construction.
    """

    num_qubits: int
    amps: np.ndarray

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))


def new_register(num_qubits: int) -> StateVector:
    """Register initialised to |0...0>."""
    if not isinstance(num_qubits, int) or num_qubits < 1 or num_qubits > MAX_QUBITS:
        raise ValueError(
            f"register size must be between 1 and {MAX_QUBITS} qubits, got {num_qubits!r}"
        )
    amps = np.zeros(1 << num_qubits, dtype=complex)
    amps[0] = 1.0
    return StateVector(num_qubits, amps)


def _check_indices(state: StateVector, gate: GateSpec) -> None:
    expected_controls = _NUM_CONTROLS[gate.kind]
    if len(gate.targets) != 1:
        raise IndexError(f"{gate.kind.value} takes exactly one target, got {gate.targets}")
    if len(gate.controls) != expected_controls:
        raise IndexError(
            f"{gate.kind.value} takes {expected_controls} control(s), got {gate.controls}"
        )
    qubits = gate.qubits()
    if len(set(qubits)) != len(qubits):
        raise IndexError(f"duplicate control/target indices {qubits}")
    for q in qubits:
        if not 0 <= q < state.num_qubits:
            raise IndexError(f"qubit index {q} out of range for {state.num_qubits}-qubit register")


def _apply_controlled_1q(
    amps: np.ndarray, u: np.ndarray, target: int, controls: tuple[int, ...]
) -> np.ndarray:
    """Apply a 2x2 unitary to ``target`` on the subspace where all controls are 1."""
    idx = np.arange(amps.size, dtype=np.intp)
    sel = (idx >> target) & 1 == 0
    for c in controls:
        sel &= (idx >> c) & 1 == 1
    i0 = idx[sel]
    i1 = i0 | (1 << target)
    out = amps.copy()
    a0 = amps[i0]
    a1 = amps[i1]
    out[i0] = u[0, 0] * a0 + u[0, 1] * a1
    out[i1] = u[1, 0] * a0 + u[1, 1] * a1
    return out


def apply_gate(state: StateVector, gate: GateSpec) -> StateVector:
    """New state with ``gate`` applied.  Norm is preserved (no renormalising)."""
    _check_indices(state, gate)
    u = base_matrix(gate.kind, gate.theta)
    amps = _apply_controlled_1q(state.amps, u, gate.targets[0], gate.controls)
    return StateVector(state.num_qubits, amps)


def probabilities(state: StateVector) -> np.ndarray:
    """|amp|^2 per basis index; sums to 1 up to float error."""
    return np.abs(state.amps) ** 2


def _measure_z(state: StateVector, qubit: int, rng: Rng) -> tuple[int, StateVector]:
    idx = np.arange(state.dim, dtype=np.intp)
    mask0 = (idx >> qubit) & 1 == 0
    p0 = float(np.sum(np.abs(state.amps[mask0]) ** 2))
    outcome = 0 if rng.random() < p0 else 1
    keep = mask0 if outcome == 0 else ~mask0
    amps = np.where(keep, state.amps, 0.0)
    amps = amps / math.sqrt(float(np.sum(np.abs(amps) ** 2)))
    return outcome, StateVector(state.num_qubits, amps)


def measure(
    state: StateVector, qubit: int, basis: MeasurementBasis, rng: Rng
) -> tuple[int, StateVector]:
    """Sample one measurement outcome and return (outcome, collapsed state).

    Z basis: outcome 0 means the qubit collapsed to |0>, 1 to |1>.
    X basis: outcome 0 means |+>, 1 means |->.  The collapse is the
    renormalised projection, so re-measuring the same qubit in the same
    basis immediately afterwards repeats the outcome with probability 1.
    """
    if not 0 <= qubit < state.num_qubits:
        raise IndexError(f"qubit index {qubit} out of range for {state.num_qubits}-qubit register")
    if basis is MeasurementBasis.Z:
        return _measure_z(state, qubit, rng)
    # X basis: H maps |+>/|-> onto |0>/|1>; measure there, rotate back.
    rotated = apply_gate(state, h(qubit))
    outcome, collapsed = _measure_z(rotated, qubit, rng)
    return outcome, apply_gate(collapsed, h(qubit))


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    def length(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)


def reduced_density(state: StateVector, qubit: int) -> np.ndarray:
    """2x2 reduced density matrix of one qubit (others traced out)."""
    if not 0 <= qubit < state.num_qubits:
        raise IndexError(f"qubit index {qubit} out of range for {state.num_qubits}-qubit register")
    n = state.num_qubits
    psi = state.amps.reshape([2] * n)
    # Axis n-1-q holds qubit q (qubit 0 is the least-significant index bit).
    psi = np.moveaxis(psi, n - 1 - qubit, 0).reshape(2, -1)
    return psi @ psi.conj().T


def bloch_vector(state: StateVector, qubit: int) -> BlochVector:
    """(Tr rho*sx, Tr rho*sy, Tr rho*sz) of the qubit's reduced state.

    Unit length exactly when the qubit is unentangled with the rest of
    the register; the maximally mixed half of an entangled pair sits at
    the origin.
    """
    rho = reduced_density(state, qubit)
    bx = 2.0 * float(rho[0, 1].real)
    by = -2.0 * float(rho[0, 1].imag)
    bz = float(rho[0, 0].real - rho[1, 1].real)
    return BlochVector(bx, by, bz)


def purity(state: StateVector, qubit: int) -> float:
    """Tr(rho^2) of the qubit's reduced density matrix; 1 iff unentangled."""
    rho = reduced_density(state, qubit)
    return float(np.trace(rho @ rho).real)


def is_entangled(state: StateVector, qubit: int, tol: float = 1e-9) -> bool:
    """True iff the qubit's reduced state is mixed (purity < 1 - tol)."""
    if state.num_qubits < 2:
        raise ValueError("entanglement is undefined for a single-qubit register")
    return purity(state, qubit) < 1.0 - tol


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2, clipped to [0, 1]."""
    if a.num_qubits != b.num_qubits:
        raise ValueError(
            f"register sizes differ: {a.num_qubits} vs {b.num_qubits} qubits"
        )
    overlap = np.vdot(a.amps, b.amps)
    return min(1.0, float(abs(overlap) ** 2))
