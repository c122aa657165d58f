"""Command line interface: run circuits, explore in a REPL, print demos, serve.

Exit codes for `run`: 0 success, 1 parse or validation error, 2 I/O
error.  Demo subcommands exit 1 with a usage hint on bad parameters.
"""
from __future__ import annotations

import argparse
import os
import sys
import textwrap

from . import dsl
from .algorithms import (
    ShorMode,
    compare_search,
    eavesdrop_demo,
    grover_search,
    qft_period_demo,
    shor_factor,
)
from .lessons import Catalog, gate_analogy, load_catalog
from .statevector import (
    MAX_QUBITS,
    Rng,
    StateVector,
    apply_gate,
    bloch_vector,
    is_entangled,
    measure,
    new_register,
    probabilities,
)

BAR_WIDTH = 40


def _basis_label(index: int, num_qubits: int) -> str:
    # leftmost bit is the highest qubit; qubit 0 is rightmost
    return format(index, f"0{num_qubits}b")


def _print_state(state: StateVector, out) -> None:
    probs = probabilities(state)
    for index, (amp, p) in enumerate(zip(state.amps, probs)):
        if p < 1e-12 and abs(amp) < 1e-12:
            continue
        label = _basis_label(index, state.num_qubits)
        out.write(f"  |{label}>  {amp.real:+.4f}{amp.imag:+.4f}i   p={p:.4f}\n")
    for qubit in range(state.num_qubits):
        vec = bloch_vector(state, qubit)
        tag = ""
        if state.num_qubits > 1 and is_entangled(state, qubit):
            tag = "   entangled"
        out.write(f"  q{qubit} bloch=({vec.x:+.3f}, {vec.y:+.3f}, {vec.z:+.3f}){tag}\n")


def _bar(fraction: float) -> str:
    filled = round(max(0.0, min(1.0, fraction)) * BAR_WIDTH)
    return "#" * filled + " " * (BAR_WIDTH - filled)


def _load_catalog_or_die(path: str | None) -> Catalog:
    source = path or os.environ.get("QANA_CATALOG") or None
    catalog, errors = load_catalog(source)
    if errors:
        for error in errors:
            sys.stderr.write(f"catalog error: {error}\n")
        raise SystemExit(1)
    return catalog


def cmd_run(args: argparse.Namespace) -> int:
    try:
        source = open(args.path, encoding="utf-8").read()
    except OSError as exc:
        sys.stderr.write(f"cannot read {args.path}: {exc}\n")
        return 2
    try:
        circuit = dsl.parse(source, name=args.path)
        result = dsl.run(circuit, Rng(args.seed), trace=args.trace)
    except dsl.ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return 1
    except ValueError as exc:
        sys.stderr.write(f"invalid circuit: {exc}\n")
        return 1

    if args.trace and result.per_step_states:
        for step, (instr, state) in enumerate(zip(circuit.instructions, result.per_step_states)):
            sys.stdout.write(f"step {step + 1}: {dsl.serialize_instruction(instr)}\n")
            _print_state(state, sys.stdout)
    for _, qubit, basis, outcome in result.measurements:
        sys.stdout.write(f"measure q{qubit} ({basis.value}) -> {outcome}\n")
    sys.stdout.write("final probabilities:\n")
    _print_state(result.final_state, sys.stdout)
    return 0


def _replay(lines: list[str], num_qubits: int, seed: int) -> tuple[StateVector, Rng]:
    """Rebuild REPL state from scratch; same seed reproduces all outcomes."""
    state = new_register(num_qubits)
    rng = Rng(seed)
    for line in lines:
        instr = dsl.parse_line(line)
        if isinstance(instr, dsl.GateInstr):
            state = apply_gate(state, instr.gate)
        elif isinstance(instr, dsl.MeasureInstr):
            _, state = measure(state, instr.qubit, instr.basis, rng)
    return state, rng


def cmd_repl(args: argparse.Namespace) -> int:
    if not 1 <= args.qubits <= MAX_QUBITS:
        sys.stderr.write(f"qubits must be between 1 and {MAX_QUBITS}\n")
        return 1
    catalog = _load_catalog_or_die(args.catalog)
    num_qubits, seed = args.qubits, args.seed
    state = new_register(num_qubits)
    rng = Rng(seed)
    history: list[str] = []

    out = sys.stdout
    out.write(f"{num_qubits}-qubit register, seed {seed}."
              " Enter instructions (h 0, cnot 0 1, measure 0 z, ...),"
              " or undo / reset / history / quit.\n")
    while True:
        out.write("qana> ")
        out.flush()
        line = sys.stdin.readline()
        if not line:
            out.write("\n")
            return 0
        line = line.strip()
        if not line:
            continue
        if line in ("quit", "exit"):
            return 0
        if line == "help":
            out.write("instructions: x|y|z|h Q, phase T Q, cphase T C Q, cnot C T,"
                      " toffoli C1 C2 T, measure Q z|x\ncommands: undo, reset, history, quit\n")
            continue
        if line == "history":
            for entry in history:
                out.write(f"  {entry}\n")
            continue
        if line == "reset":
            history.clear()
            state, rng = new_register(num_qubits), Rng(seed)
            _print_state(state, out)
            continue
        if line == "undo":
            if not history:
                out.write("nothing to undo\n")
                continue
            history.pop()
            state, rng = _replay(history, num_qubits, seed)
            _print_state(state, out)
            continue

        try:
            instr = dsl.parse_line(line)
        except dsl.ParseError as exc:
            out.write(f"error: {exc}\n")
            continue
        if instr is None:
            continue
        violations = dsl.validate(dsl.Circuit(num_qubits, (instr,)))
        if violations:
            out.write(f"error: {violations[0].message}\n")
            continue

        if isinstance(instr, dsl.GateInstr):
            state = apply_gate(state, instr.gate)
            entry = gate_analogy(catalog, instr.gate.kind)
            if entry is not None:
                out.write(f"analogy: {entry.title}\n")
        elif isinstance(instr, dsl.MeasureInstr):
            outcome, state = measure(state, instr.qubit, instr.basis, rng)
            out.write(f"outcome: {outcome}\n")
        history.append(dsl.serialize_instruction(instr))
        _print_state(state, out)


def cmd_demo(args: argparse.Namespace) -> int:
    out = sys.stdout
    try:
        if args.kind == "grover":
            comparison = compare_search(args.n)
            out.write(
                f"classical worst case {comparison.classical_steps},"
                f" pedagogical quantum queries {comparison.quantum_resource}\n"
            )
            report = grover_search(args.n, args.marked, args.iterations)
            out.write(f"search space {report.search_space_size}"
                      f" (padded to {report.padded_size}),"
                      f" marked index {report.marked_index}\n")
            for iteration, amp in enumerate(report.marked_amplitude_trace, start=1):
                out.write(f"iter {iteration:3d} |{_bar(amp * amp)}| {amp * amp:.3f}\n")
            out.write(f"iterations run: {report.iterations_run}"
                      f" (optimal {report.optimal_iterations})\n")
            out.write(f"final success probability: {report.final_success_probability:.6f}\n")
        elif args.kind == "shor":
            mode = ShorMode(args.mode)
            report = shor_factor(args.n, mode, Rng(args.seed))
            for attempt in report.attempts:
                order = "-" if attempt.order_r is None else str(attempt.order_r)
                out.write(f"a={attempt.a:<6d} order={order:<6s} {attempt.reason}\n")
            if report.factors is None:
                out.write("factors: not found, try another seed\n")
            else:
                out.write(f"factors: {', '.join(str(f) for f in report.factors)}\n")
        elif args.kind == "qft":
            probs = qft_period_demo(args.qubits, args.period)
            out.write(f"{args.qubits}-qubit register, input period {args.period}:\n")
            for index, p in enumerate(probs):
                if p > 1e-12:
                    out.write(f"index {index:3d} |{_bar(float(p))}| {p:.4f}\n")
        else:
            report = eavesdrop_demo(args.qubits, args.intercept, Rng(args.seed))
            out.write(f"check bits: {report.num_check_bits}\n")
            out.write(f"intercepted: {'yes' if report.intercepted else 'no'}\n")
            out.write(f"mismatches: {report.mismatch_count}"
                      f" (rate {report.mismatch_rate:.4f})\n")
    except ValueError as exc:
        sys.stderr.write(f"invalid parameters: {exc}\n")
        sys.stderr.write(f"usage: {DEMO_USAGE[args.kind]}\n")
        return 1
    return 0


DEMO_USAGE = {
    "grover": "qana demo grover --n N [--marked I] [--iterations K]",
    "shor": "qana demo shor --n N [--mode hybrid|full] [--seed S]",
    "qft": "qana demo qft --qubits N --period P",
    "eavesdrop": "qana demo eavesdrop --qubits N [--intercept] [--seed S]",
}


def cmd_lesson(args: argparse.Namespace) -> int:
    catalog = _load_catalog_or_die(args.catalog)
    out = sys.stdout
    if not args.id:
        for lesson in catalog.lessons:
            out.write(f"layer {lesson.layer}  {lesson.id:28s} {lesson.title}\n")
        return 0
    lesson = catalog.lesson(args.id)
    if lesson is None:
        sys.stderr.write(f"unknown lesson '{args.id}'\n")
        return 1
    out.write(f"{lesson.title} (layer {lesson.layer})\n")
    if lesson.banner:
        out.write("\n[!] " + "\n    ".join(textwrap.wrap(lesson.banner, 76)) + "\n")
    for index, section in enumerate(lesson.sections, start=1):
        out.write(f"\n-- section {index} --\n")
        out.write("\n".join(textwrap.wrap(section.prose, 80)) + "\n")
        if section.analogy_ref:
            entry = catalog.analogy(section.analogy_ref)
            if entry is not None:
                out.write(f"\nanalogy ({entry.title}):\n")
                out.write("\n".join(textwrap.wrap(entry.body, 80)) + "\n")
        if section.circuit_snippet:
            out.write("\ncircuit:\n")
            for line in section.circuit_snippet.strip().splitlines():
                out.write(f"    {line}\n")
        if section.demo_ref:
            params = " ".join(f"{k}={v}" for k, v in section.demo_ref.params.items())
            out.write(f"\ndemo: {section.demo_ref.op} {params}\n")
    if lesson.quiz:
        out.write("\n-- quiz --\n")
        for number, item in enumerate(lesson.quiz, start=1):
            out.write(f"{number}. {item.question}\n")
            for choice_index, choice in enumerate(item.choices):
                out.write(f"   [{choice_index}] {choice}\n")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    catalog = _load_catalog_or_die(args.catalog)
    app = create_app(catalog, session_ttl=args.ttl)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qana", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a .qc circuit file")
    p_run.add_argument("path")
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--trace", action="store_true", help="print the state after every step")
    p_run.set_defaults(func=cmd_run)

    p_repl = sub.add_parser("repl", help="interactive instruction loop")
    p_repl.add_argument("--qubits", type=int, default=2)
    p_repl.add_argument("--seed", type=int, default=0)
    p_repl.add_argument("--catalog", default=None, help="content directory override")
    p_repl.set_defaults(func=cmd_repl)

    p_demo = sub.add_parser("demo", help="print an algorithm demonstration")
    demo_sub = p_demo.add_subparsers(dest="kind", required=True)

    d_grover = demo_sub.add_parser("grover")
    d_grover.add_argument("--n", type=int, required=True, help="search space size")
    d_grover.add_argument("--marked", type=int, default=0)
    d_grover.add_argument("--iterations", type=int, default=None)
    d_grover.set_defaults(func=cmd_demo)

    d_shor = demo_sub.add_parser("shor")
    d_shor.add_argument("--n", type=int, required=True, help="odd composite to factor")
    d_shor.add_argument("--mode", choices=["hybrid", "full"], default="hybrid")
    d_shor.add_argument("--seed", type=int, default=0)
    d_shor.set_defaults(func=cmd_demo)

    d_qft = demo_sub.add_parser("qft")
    d_qft.add_argument("--qubits", type=int, required=True)
    d_qft.add_argument("--period", type=int, required=True)
    d_qft.set_defaults(func=cmd_demo)

    d_eav = demo_sub.add_parser("eavesdrop")
    d_eav.add_argument("--qubits", type=int, required=True, help="number of check bits")
    d_eav.add_argument("--intercept", action="store_true")
    d_eav.add_argument("--seed", type=int, default=0)
    d_eav.set_defaults(func=cmd_demo)

    p_lesson = sub.add_parser("lesson", help="list lessons or print one")
    p_lesson.add_argument("id", nargs="?", default=None)
    p_lesson.add_argument("--catalog", default=None, help="content directory override")
    p_lesson.set_defaults(func=cmd_lesson)

    p_serve = sub.add_parser("serve", help="start the HTTP API")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--catalog", default=None, help="content directory override")
    p_serve.add_argument("--ttl", type=float, default=1800.0, help="idle session TTL in seconds")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
