"""HTTP API: simulator sessions, lessons, quizzes, and algorithm demos.

Sessions live in memory and expire after an idle TTL; expired ids are
remembered so they answer 410 rather than 404.  Every mutation of one
session is serialized behind that session's lock, so concurrent posts
observe a total order.  All error bodies are flat JSON with a
``message`` field; DSL errors additionally carry ``line``, ``column``
and ``offending_token``.
"""
from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import dsl
from .algorithms import ShorMode, eavesdrop_demo, grover_search, shor_factor
from .lessons import Catalog, Lesson, gate_analogy, grade_quiz, load_catalog
from .statevector import (
    MAX_QUBITS,
    MeasurementBasis,
    Rng,
    StateVector,
    apply_gate,
    bloch_vector,
    is_entangled,
    measure,
    new_register,
    probabilities,
)

DEFAULT_SESSION_TTL = 1800.0


@dataclass
class Session:
    id: str
    seed: int
    num_qubits: int
    state: StateVector
    rng: Rng
    history: list[str] = field(default_factory=list)
    created_at: float = field(default_factory=time.monotonic)
    last_touched: float = field(default_factory=time.monotonic)
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """In-memory session map with idle expiry and 410 tombstones."""

    def __init__(self, ttl: float):
        self.ttl = ttl
        self._sessions: dict[str, Session] = {}
        self._expired: set[str] = set()
        self._lock = threading.Lock()

    def create(self, num_qubits: int, seed: int | None) -> Session:
        if seed is None:
            seed = secrets.randbits(63)
        session = Session(
            id=secrets.token_hex(16),
            seed=seed,
            num_qubits=num_qubits,
            state=new_register(num_qubits),
            rng=Rng(seed),
        )
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        """Fetch a live session, refreshing its idle clock."""
        now = time.monotonic()
        with self._lock:
            session = self._sessions.get(session_id)
            if session is not None and now - session.last_touched > self.ttl:
                del self._sessions[session_id]
                self._expired.add(session_id)
                session = None
            if session is None:
                if session_id in self._expired:
                    raise HTTPException(410, f"session '{session_id}' has expired")
                raise HTTPException(404, f"unknown session '{session_id}'")
            session.last_touched = now
            return session


def state_view(state: StateVector) -> dict:
    probs = probabilities(state)
    view = {
        "num_qubits": state.num_qubits,
        "amplitudes": [
            {"re": float(a.real), "im": float(a.imag), "probability": float(p)}
            for a, p in zip(state.amps, probs)
        ],
        "bloch": [],
        "entangled_flags": [],
    }
    for qubit in range(state.num_qubits):
        vec = bloch_vector(state, qubit)
        view["bloch"].append({"x": vec.x, "y": vec.y, "z": vec.z})
        # a lone qubit has no partner to be entangled with
        flag = is_entangled(state, qubit) if state.num_qubits > 1 else False
        view["entangled_flags"].append(bool(flag))
    return view


class CreateSessionBody(BaseModel):
    num_qubits: int
    seed: int | None = None


class InstructionBody(BaseModel):
    dsl_line: str


class MeasureBody(BaseModel):
    qubit: int
    basis: str


class QuizBody(BaseModel):
    answers: list[int]


class GroverBody(BaseModel):
    n: int
    marked: int
    iterations: int | None = None


class ShorBody(BaseModel):
    n: int
    mode: str = "hybrid"
    seed: int | None = None


class EavesdropBody(BaseModel):
    qubits: int
    intercept: bool
    seed: int | None = None


def _lesson_summary(lesson: Lesson) -> dict:
    return {"id": lesson.id, "layer": lesson.layer, "title": lesson.title}


def _lesson_detail(lesson: Lesson) -> dict:
    data = lesson.to_dict()
    # answers and explanations stay server-side until the quiz is posted
    data["quiz"] = [{"question": q["question"], "choices": q["choices"]} for q in data["quiz"]]
    return data


def create_app(catalog: Catalog | None = None, session_ttl: float = DEFAULT_SESSION_TTL) -> FastAPI:
    if catalog is None:
        catalog, errors = load_catalog()
        bad = [str(e) for e in errors]
        if bad:
            raise RuntimeError("bundled catalog failed to load: " + "; ".join(bad))

    app = FastAPI(title="qana", docs_url=None, redoc_url=None)
    # the browser UI is served as static files from another origin
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(session_ttl)

    @app.exception_handler(StarletteHTTPException)
    def _http_error(request, exc):
        return JSONResponse(status_code=exc.status_code, content={"message": str(exc.detail)})

    @app.exception_handler(RequestValidationError)
    def _validation_error(request, exc):
        first = exc.errors()[0] if exc.errors() else {}
        where = ".".join(str(part) for part in first.get("loc", ()))
        message = f"invalid request: {where}: {first.get('msg', 'malformed body')}"
        return JSONResponse(status_code=400, content={"message": message})

    @app.exception_handler(dsl.ParseError)
    def _parse_error(request, exc: dsl.ParseError):
        return JSONResponse(
            status_code=400,
            content={
                "message": exc.message,
                "line": exc.line,
                "column": exc.column,
                "offending_token": exc.offending_token,
            },
        )

    @app.post("/api/sessions")
    def create_session(body: CreateSessionBody):
        if not 1 <= body.num_qubits <= MAX_QUBITS:
            raise HTTPException(400, f"num_qubits must be between 1 and {MAX_QUBITS}")
        session = store.create(body.num_qubits, body.seed)
        return {"session_id": session.id, "state_view": state_view(session.state)}

    @app.post("/api/sessions/{session_id}/instructions")
    def post_instruction(session_id: str, body: InstructionBody):
        session = store.get(session_id)
        instr = dsl.parse_line(body.dsl_line)
        if instr is None:
            raise HTTPException(400, "empty instruction")
        if isinstance(instr, dsl.MeasureInstr):
            raise HTTPException(400, "use the measure endpoint for measurements")
        violations = dsl.validate(dsl.Circuit(session.num_qubits, (instr,)))
        if violations:
            raise HTTPException(400, violations[0].message)
        analogy = None
        with session.lock:
            if isinstance(instr, dsl.GateInstr):
                session.state = apply_gate(session.state, instr.gate)
                entry = gate_analogy(catalog, instr.gate.kind)
                analogy = entry.to_dict() if entry else None
            session.history.append(dsl.serialize_instruction(instr))
            view = state_view(session.state)
        return {"state_view": view, "analogy": analogy}

    @app.post("/api/sessions/{session_id}/measure")
    def post_measure(session_id: str, body: MeasureBody):
        session = store.get(session_id)
        try:
            basis = MeasurementBasis(body.basis.lower())
        except ValueError:
            raise HTTPException(400, f"unknown basis {body.basis!r} (use z or x)")
        if not 0 <= body.qubit < session.num_qubits:
            raise HTTPException(400, f"qubit {body.qubit} out of range for {session.num_qubits} qubits")
        with session.lock:
            outcome, session.state = measure(session.state, body.qubit, basis, session.rng)
            session.history.append(f"measure {body.qubit} {basis.value}")
            view = state_view(session.state)
        return {"outcome": outcome, "state_view": view}

    @app.post("/api/sessions/{session_id}/reset")
    def post_reset(session_id: str):
        session = store.get(session_id)
        with session.lock:
            session.state = new_register(session.num_qubits)
            session.rng = Rng(session.seed)
            session.history.clear()
            view = state_view(session.state)
        return {"state_view": view}

    @app.get("/api/sessions/{session_id}/state")
    def get_state(session_id: str):
        session = store.get(session_id)
        with session.lock:
            return state_view(session.state)

    @app.get("/api/sessions/{session_id}/history")
    def get_history(session_id: str):
        session = store.get(session_id)
        with session.lock:
            return {"history": list(session.history)}

    @app.get("/api/lessons")
    def list_lessons():
        return [_lesson_summary(lesson) for lesson in catalog.lessons]

    @app.get("/api/lessons/{lesson_id}")
    def get_lesson(lesson_id: str):
        lesson = catalog.lesson(lesson_id)
        if lesson is None:
            raise HTTPException(404, f"unknown lesson '{lesson_id}'")
        return _lesson_detail(lesson)

    @app.get("/api/analogies")
    def list_analogies():
        return [entry.to_dict() for entry in catalog.analogies]

    @app.post("/api/quiz/{lesson_id}")
    def post_quiz(lesson_id: str, body: QuizBody):
        lesson = catalog.lesson(lesson_id)
        if lesson is None:
            raise HTTPException(404, f"unknown lesson '{lesson_id}'")
        try:
            score = grade_quiz(lesson.quiz, body.answers)
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        results = [
            {
                "correct": answer == item.answer_index,
                "answer_index": item.answer_index,
                "explanation": item.explanation,
            }
            for item, answer in zip(lesson.quiz, body.answers)
        ]
        return {"score": score, "results": results}

    @app.post("/api/demos/grover")
    def demo_grover(body: GroverBody):
        try:
            report = grover_search(body.n, body.marked, body.iterations)
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        return report.to_dict()

    @app.post("/api/demos/shor")
    def demo_shor(body: ShorBody):
        try:
            mode = ShorMode(body.mode.lower())
        except ValueError:
            raise HTTPException(400, f"unknown mode {body.mode!r} (use full or hybrid)")
        rng = Rng(body.seed) if body.seed is not None else Rng(secrets.randbits(63))
        try:
            report = shor_factor(body.n, mode, rng)
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        return report.to_dict()

    @app.post("/api/demos/eavesdrop")
    def demo_eavesdrop(body: EavesdropBody):
        rng = Rng(body.seed) if body.seed is not None else Rng(secrets.randbits(63))
        try:
            report = eavesdrop_demo(body.qubits, body.intercept, rng)
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        return report.to_dict()

    return app
