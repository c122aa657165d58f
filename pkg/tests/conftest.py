"""Shared test helpers plus the acceptance-gate summary.

After a run that included tests/test_acceptance.py, one PASS/FAIL line
per acceptance criterion is appended to the terminal summary.
"""
from __future__ import annotations

import numpy as np

import qana.statevector as sv
from qana import dsl

ACCEPTANCE_FILE = "tests/test_acceptance.py"

_CRITERION_LABELS = {
    "test_gate_semantics": "gate semantics: example rows + unitarity (1e-12, <1s)",
    "test_dense_oracle_equivalence": "dense-oracle equivalence: 500 random circuits, n<=4 (1e-10, <30s)",
    "test_bloch_suite": "Bloch suite: axis states exact, Bell pair centered + entangled",
    "test_measurement_suite": "measurement: repeatability, Z-then-X disturbance, Bell correlation",
    "test_grover": "Grover: N=4 exact, N=1024 closed form, compare_search(1000)=(1000,32) (<5s)",
    "test_shor": "Shor: full-circuit N=15 and hybrid N=143, seeds 0-9 (<60s)",
    "test_qft": "QFT: matches DFT matrix n<=5, period demo support exact",
    "test_eavesdrop": "eavesdrop: clean rate exactly 0, intercept rate in [0.23, 0.27]",
    "test_dsl": "DSL: 1000-program round-trip fuzz + ParseError positions",
    "test_catalog": "catalog: zero violations, all analogies table-tagged, snippets norm-1",
    "test_api_contract": "API contract: live-server endpoint examples + expired session 410",
}


def random_gate(rng: np.random.Generator, num_qubits: int) -> sv.GateSpec:
    """Uniformly draw any supported gate with in-range, distinct indices."""
    kinds = list(sv.GateKind)
    while True:
        kind = kinds[rng.integers(len(kinds))]
        needed = 1 + {"cphase": 1, "cnot": 1, "toffoli": 2}.get(kind.value, 0)
        if needed <= num_qubits:
            break
    qubits = [int(q) for q in rng.choice(num_qubits, size=needed, replace=False)]
    theta = float(rng.uniform(-2 * np.pi, 2 * np.pi))
    if kind is sv.GateKind.PHASE:
        return sv.phase(theta, qubits[0])
    if kind is sv.GateKind.CPHASE:
        return sv.cphase(theta, qubits[0], qubits[1])
    if kind is sv.GateKind.CNOT:
        return sv.cnot(qubits[0], qubits[1])
    if kind is sv.GateKind.TOFFOLI:
        return sv.toffoli(qubits[0], qubits[1], qubits[2])
    return sv.GateSpec(kind, (qubits[0],))


def random_circuit(
    rng: np.random.Generator,
    num_qubits: int,
    num_gates: int,
    with_measures: bool = False,
    with_barriers: bool = False,
) -> dsl.Circuit:
    instructions: list[dsl.Instruction] = []
    for _ in range(num_gates):
        roll = rng.random()
        if with_barriers and roll < 0.05:
            instructions.append(dsl.BarrierInstr())
        elif with_measures and roll < 0.15:
            qubit = int(rng.integers(num_qubits))
            basis = sv.MeasurementBasis.Z if rng.random() < 0.5 else sv.MeasurementBasis.X
            instructions.append(dsl.MeasureInstr(qubit, basis))
        else:
            instructions.append(dsl.GateInstr(random_gate(rng, num_qubits)))
    return dsl.Circuit(num_qubits, tuple(instructions))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes: dict[str, str] = {}
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if ACCEPTANCE_FILE not in nodeid.replace("\\", "/"):
                continue
            name = nodeid.split("::")[-1]
            result = "PASS" if status == "passed" else "FAIL"
            # keep the worst outcome if setup and call both reported
            if outcomes.get(name) != "FAIL":
                outcomes[name] = result
    if not outcomes:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for name, label in _CRITERION_LABELS.items():
        if name in outcomes:
            terminalreporter.write_line(f"  [{outcomes[name]}] {label}")
    for name in outcomes:
        if name not in _CRITERION_LABELS:
            terminalreporter.write_line(f"  [{outcomes[name]}] {name}")
