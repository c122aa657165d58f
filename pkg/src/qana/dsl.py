"""Line-oriented circuit description language (`.qc` files).

Grammar, one instruction per line, ``#`` starts a comment:

    qubits N                  header, required first
    x q | y q | z q | h q     single-qubit gates
    phase THETA q             diagonal phase gate, THETA in radians
    cphase THETA c q          controlled phase
    cnot c t
    toffoli c1 c2 t
    measure q z|x
    barrier                   display-only step separator

Angles are radian decimal literals.  LF and CRLF sources are both
accepted; the serializer emits LF and canonical lower-case text.
Parsing stops at the first error, which carries a 1-based line/column
position. No loops, no expressions, no classical control: lesson
circuits are small by design.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .statevector import (
    GateKind,
    GateSpec,
    MeasurementBasis,
    Rng,
    StateVector,
    apply_gate,
    cnot,
    cphase,
    h,
    measure,
    new_register,
    phase,
    toffoli,
    x,
    y,
    z,
)


class ParseError(Exception):
    """Parse failure at a 1-based (line, column) position in the source."""

    def __init__(self, line: int, column: int, message: str, offending_token: str = ""):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message
        self.offending_token = offending_token


@dataclass(frozen=True)
class GateInstr:
    gate: GateSpec


@dataclass(frozen=True)
class MeasureInstr:
    qubit: int
    basis: MeasurementBasis


@dataclass(frozen=True)
class BarrierInstr:
    pass


Instruction = GateInstr | MeasureInstr | BarrierInstr


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    instructions: tuple[Instruction, ...]
    name: str | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Violation:
    """A validation finding; ``instruction_index`` is None for circuit-level issues."""

    instruction_index: int | None
    message: str


@dataclass(frozen=True)
class RunResult:
    final_state: StateVector
    measurements: tuple[tuple[int, int, MeasurementBasis, int], ...]
    per_step_states: tuple[StateVector, ...] | None = None


_TOKEN_RE = re.compile(r"\S+")

_GATE_BUILDERS = {
    "x": x,
    "y": y,
    "z": z,
    "h": h,
}

#: mnemonic -> argument pattern; "q" = qubit index, "f" = angle, "b" = basis
_ARG_PATTERNS = {
    "x": "q",
    "y": "q",
    "z": "q",
    "h": "q",
    "phase": "fq",
    "cphase": "fqq",
    "cnot": "qq",
    "toffoli": "qqq",
    "measure": "qb",
    "barrier": "",
}

_ARITY_WORDS = {0: "no arguments", 1: "1 argument"}


def _tokenize(line_text: str) -> list[tuple[str, int]]:
    """(token, 1-based column) pairs, with any ``#`` comment stripped."""
    hash_pos = line_text.find("#")
    code = line_text if hash_pos < 0 else line_text[:hash_pos]
    return [(m.group(), m.start() + 1) for m in _TOKEN_RE.finditer(code)]


def _parse_index(token: str, col: int, lineno: int) -> int:
    if not token.isdigit():
        raise ParseError(lineno, col, f"malformed qubit index {token!r}", token)
    return int(token)


def _parse_angle(token: str, col: int, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(lineno, col, f"malformed angle {token!r}", token) from None
    if value != value or value in (float("inf"), float("-inf")):
        raise ParseError(lineno, col, f"malformed angle {token!r}", token)
    return value


def _parse_instruction(
    mnemonic: str, mcol: int, args: list[tuple[str, int]], lineno: int
) -> Instruction:
    pattern = _ARG_PATTERNS.get(mnemonic)
    if pattern is None:
        raise ParseError(lineno, mcol, f"unknown instruction {mnemonic!r}", mnemonic)
    if len(args) != len(pattern):
        expected = _ARITY_WORDS.get(len(pattern), f"{len(pattern)} arguments")
        raise ParseError(
            lineno,
            mcol,
            f"{mnemonic!r} expects {expected}, got {len(args)}",
            mnemonic,
        )
    values: list[object] = []
    for spec, (token, col) in zip(pattern, args):
        if spec == "q":
            values.append(_parse_index(token, col, lineno))
        elif spec == "f":
            values.append(_parse_angle(token, col, lineno))
        else:  # basis
            if token not in ("z", "x"):
                raise ParseError(lineno, col, f"unknown basis {token!r} (use z or x)", token)
            values.append(MeasurementBasis(token))

    if mnemonic in _GATE_BUILDERS:
        return GateInstr(_GATE_BUILDERS[mnemonic](values[0]))
    if mnemonic == "phase":
        return GateInstr(phase(values[0], values[1]))
    if mnemonic == "cphase":
        return GateInstr(cphase(values[0], values[1], values[2]))
    if mnemonic == "cnot":
        return GateInstr(cnot(values[0], values[1]))
    if mnemonic == "toffoli":
        return GateInstr(toffoli(values[0], values[1], values[2]))
    if mnemonic == "measure":
        return MeasureInstr(values[0], values[1])
    return BarrierInstr()


def parse(source: str, name: str | None = None) -> Circuit:
    """Parse DSL text into a Circuit.  Raises ParseError at the first problem.

    Range checks against the declared register size are left to
    :func:`validate` so a parse error always points at a textual problem.
    """
    num_qubits: int | None = None
    instructions: list[Instruction] = []
    last_line = 0
    for lineno, line_text in enumerate(source.splitlines(), start=1):
        last_line = lineno
        tokens = _tokenize(line_text)
        if not tokens:
            continue
        (mnemonic, mcol), args = tokens[0], tokens[1:]
        if num_qubits is None:
            if mnemonic != "qubits":
                raise ParseError(
                    lineno, mcol, "expected 'qubits N' header before instructions", mnemonic
                )
            if len(args) != 1:
                raise ParseError(lineno, mcol, "'qubits' expects 1 argument", mnemonic)
            token, col = args[0]
            size = _parse_index(token, col, lineno)
            if size < 1:
                raise ParseError(lineno, col, "register size must be at least 1", token)
            num_qubits = size
            continue
        if mnemonic == "qubits":
            raise ParseError(lineno, mcol, "duplicate 'qubits' header", mnemonic)
        instructions.append(_parse_instruction(mnemonic, mcol, args, lineno))
    if num_qubits is None:
        raise ParseError(max(last_line, 1), 1, "missing 'qubits N' header")
    return Circuit(num_qubits, tuple(instructions), name)


def parse_line(text: str) -> Instruction | None:
    """Parse one instruction line with no header; None for blank/comment input.

    Used by the REPL and the session API, where the register size is
    fixed up front and instructions arrive one at a time.
    """
    lines = text.splitlines()
    if len(lines) > 1:
        raise ParseError(1, 1, "expected a single instruction line")
    tokens = _tokenize(lines[0] if lines else "")
    if not tokens:
        return None
    (mnemonic, mcol), args = tokens[0], tokens[1:]
    if mnemonic == "qubits":
        raise ParseError(1, mcol, "'qubits' header not allowed here", mnemonic)
    return _parse_instruction(mnemonic, mcol, args, 1)


def _format_angle(theta: float) -> str:
    return f"{theta:.17g}"


def serialize_instruction(instr: Instruction) -> str:
    if isinstance(instr, BarrierInstr):
        return "barrier"
    if isinstance(instr, MeasureInstr):
        return f"measure {instr.qubit} {instr.basis.value}"
    gate = instr.gate
    kind = gate.kind
    if kind is GateKind.PHASE:
        return f"phase {_format_angle(gate.theta)} {gate.targets[0]}"
    if kind is GateKind.CPHASE:
        return f"cphase {_format_angle(gate.theta)} {gate.controls[0]} {gate.targets[0]}"
    if kind is GateKind.CNOT:
        return f"cnot {gate.controls[0]} {gate.targets[0]}"
    if kind is GateKind.TOFFOLI:
        return f"toffoli {gate.controls[0]} {gate.controls[1]} {gate.targets[0]}"
    return f"{kind.value} {gate.targets[0]}"


def serialize(circuit: Circuit) -> str:
    """Canonical text form: lower-case mnemonics, single spaces, LF endings.

    Angles print with 17 significant digits so parse(serialize(c)) is
    structurally identical to c.
    """
    lines = [f"qubits {circuit.num_qubits}"]
    lines.extend(serialize_instruction(i) for i in circuit.instructions)
    return "\n".join(lines) + "\n"


def validate(circuit: Circuit) -> list[Violation]:
    """Index-range and duplication checks; an empty list means the circuit is runnable."""
    violations: list[Violation] = []
    n = circuit.num_qubits
    if n < 1:
        violations.append(Violation(None, f"register size must be at least 1, got {n}"))
        return violations

    def check_range(i: int, qubit: int, role: str) -> None:
        if not 0 <= qubit < n:
            violations.append(
                Violation(i, f"{role} index {qubit} out of range for {n}-qubit register")
            )

    for i, instr in enumerate(circuit.instructions):
        if isinstance(instr, MeasureInstr):
            check_range(i, instr.qubit, "measured qubit")
        elif isinstance(instr, GateInstr):
            qubits = instr.gate.qubits()
            if len(set(qubits)) != len(qubits):
                violations.append(Violation(i, f"duplicate control/target indices {qubits}"))
            for q in instr.gate.targets:
                check_range(i, q, "target")
            for q in instr.gate.controls:
                check_range(i, q, "control")
    return violations


def run(circuit: Circuit, rng: Rng, trace: bool = False) -> RunResult:
    """Execute a validated circuit from |0...0>.

    Measurement records are (instruction_index, qubit, basis, outcome)
    in program order.  With ``trace`` set, the state after every
    instruction (barriers included) is kept for step-through displays.
    """
    violations = validate(circuit)
    if violations:
        first = violations[0]
        raise ValueError(f"invalid circuit (instruction {first.instruction_index}): {first.message}")
    state = new_register(circuit.num_qubits)
    measurements: list[tuple[int, int, MeasurementBasis, int]] = []
    steps: list[StateVector] = []
    for i, instr in enumerate(circuit.instructions):
        if isinstance(instr, GateInstr):
            state = apply_gate(state, instr.gate)
        elif isinstance(instr, MeasureInstr):
            outcome, state = measure(state, instr.qubit, instr.basis, rng)
            measurements.append((i, instr.qubit, instr.basis, outcome))
        if trace:
            steps.append(state)
    return RunResult(state, tuple(measurements), tuple(steps) if trace else None)
