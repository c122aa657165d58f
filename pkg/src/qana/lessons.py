"""Lesson catalog: analogy entries, layered lessons, quizzes, progress.

Content ships as JSON data files (one lesson per file plus a shared
analogy list) so instructors can extend the catalog without touching
code.  Loading is deterministic: files are read in sorted order and the
resulting catalog is immutable.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from . import dsl
from .statevector import GateKind

SCHEMA_VERSION = 1

BUNDLED_CONTENT_DIR = Path(__file__).parent / "content"


class Concept(Enum):
    SUPERPOSITION = "superposition"
    ENTANGLEMENT = "entanglement"
    GATE = "gate"
    ALGORITHM = "algorithm"
    MEASUREMENT = "measurement"
    DATA_STRUCTURE = "data-structure"


@dataclass(frozen=True)
class AnalogyEntry:
    id: str
    concept: Concept
    title: str
    body: str
    #: Roman-numeral tag ("I" through "V") naming the analogy table the
    #: entry was drawn from.
    source_table: str

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "concept": self.concept.value,
            "title": self.title,
            "body": self.body,
            "source_table": self.source_table,
        }


@dataclass(frozen=True)
class DemoRef:
    """Reference to a named algorithm operation plus its parameters."""

    op: str
    params: dict

    def to_dict(self) -> dict:
        return {"op": self.op, "params": dict(self.params)}


@dataclass(frozen=True)
class Section:
    prose: str
    analogy_ref: str | None = None
    circuit_snippet: str | None = None
    demo_ref: DemoRef | None = None

    def to_dict(self) -> dict:
        return {
            "prose": self.prose,
            "analogy_ref": self.analogy_ref,
            "circuit_snippet": self.circuit_snippet,
            "demo_ref": self.demo_ref.to_dict() if self.demo_ref else None,
        }


@dataclass(frozen=True)
class QuizItem:
    question: str
    choices: tuple[str, ...]
    answer_index: int
    explanation: str

    def to_dict(self) -> dict:
        return {
            "question": self.question,
            "choices": list(self.choices),
            "answer_index": self.answer_index,
            "explanation": self.explanation,
        }


@dataclass(frozen=True)
class Lesson:
    id: str
    layer: int
    title: str
    sections: tuple[Section, ...]
    quiz: tuple[QuizItem, ...] = ()
    #: Shown above the lesson when the topic has no runnable
    #: counterpart (prose and quiz only).
    banner: str | None = None

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "layer": self.layer,
            "title": self.title,
            "banner": self.banner,
            "sections": [s.to_dict() for s in self.sections],
            "quiz": [q.to_dict() for q in self.quiz],
        }


@dataclass(frozen=True)
class Catalog:
    analogies: tuple[AnalogyEntry, ...]
    lessons: tuple[Lesson, ...]

    def analogy(self, analogy_id: str) -> AnalogyEntry | None:
        return next((a for a in self.analogies if a.id == analogy_id), None)

    def lesson(self, lesson_id: str) -> Lesson | None:
        return next((l for l in self.lessons if l.id == lesson_id), None)


@dataclass(frozen=True)
class ContentError:
    path: str | None
    lesson_id: str | None
    message: str

    def __str__(self) -> str:
        where = self.path or self.lesson_id or "catalog"
        if self.path and self.lesson_id:
            where = f"{self.path} ({self.lesson_id})"
        return f"{where}: {self.message}"


@dataclass(frozen=True)
class CatalogViolation:
    lesson_id: str | None
    message: str

    def __str__(self) -> str:
        prefix = f"lesson '{self.lesson_id}': " if self.lesson_id else ""
        return prefix + self.message


#: Demo operations a lesson may reference, with the parameter names
#: each accepts.  validate_catalog checks shapes against this.
DEMO_SIGNATURES: dict[str, tuple[frozenset[str], frozenset[str]]] = {
    "grover_search": (frozenset({"n_items", "marked"}), frozenset({"iterations"})),
    "shor_factor": (frozenset({"n"}), frozenset({"mode"})),
    "qft_period_demo": (frozenset({"num_qubits", "period"}), frozenset()),
    "eavesdrop_demo": (frozenset({"num_check_bits", "intercept"}), frozenset()),
    "compare_search": (frozenset({"items_count"}), frozenset()),
    "compare_factor": (frozenset({"n"}), frozenset()),
    "trial_division": (frozenset({"n"}), frozenset()),
    "linear_search": (frozenset({"items_count", "target"}), frozenset()),
}

#: Which analogy entry a just-applied gate should surface.  The phase
#: gates have no table row of their own and inherit the nearest one.
_GATE_ANALOGY_IDS = {
    GateKind.X: "gate-x",
    GateKind.Y: "gate-y",
    GateKind.Z: "gate-z",
    GateKind.H: "gate-h",
    GateKind.PHASE: "gate-z",
    GateKind.CPHASE: "gate-cnot",
    GateKind.CNOT: "gate-cnot",
    GateKind.TOFFOLI: "gate-toffoli",
}


def gate_analogy(catalog: Catalog, kind: GateKind) -> AnalogyEntry | None:
    analogy_id = _GATE_ANALOGY_IDS.get(kind)
    return catalog.analogy(analogy_id) if analogy_id else None


def _require(raw: dict, key: str, kind: type, where: str) -> object:
    if key not in raw:
        raise ValueError(f"{where}: missing required field '{key}'")
    value = raw[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise ValueError(f"{where}: field '{key}' must be {kind.__name__}")
    return value


def _parse_analogy(raw: dict, where: str) -> AnalogyEntry:
    concept_raw = _require(raw, "concept", str, where)
    try:
        concept = Concept(concept_raw)
    except ValueError:
        names = ", ".join(c.value for c in Concept)
        raise ValueError(f"{where}: unknown concept '{concept_raw}' (expected one of {names})")
    return AnalogyEntry(
        id=_require(raw, "id", str, where),
        concept=concept,
        title=_require(raw, "title", str, where),
        body=_require(raw, "body", str, where),
        source_table=_require(raw, "source_table", str, where),
    )


def _parse_section(raw: dict, where: str) -> Section:
    demo_ref = None
    if raw.get("demo_ref") is not None:
        demo_raw = raw["demo_ref"]
        if not isinstance(demo_raw, dict):
            raise ValueError(f"{where}: demo_ref must be an object")
        op = _require(demo_raw, "op", str, where)
        params = demo_raw.get("params", {})
        if not isinstance(params, dict):
            raise ValueError(f"{where}: demo_ref params must be an object")
        demo_ref = DemoRef(op=op, params=params)
    analogy_ref = raw.get("analogy_ref")
    snippet = raw.get("circuit_snippet")
    if analogy_ref is not None and not isinstance(analogy_ref, str):
        raise ValueError(f"{where}: analogy_ref must be a string")
    if snippet is not None and not isinstance(snippet, str):
        raise ValueError(f"{where}: circuit_snippet must be a string")
    return Section(
        prose=_require(raw, "prose", str, where),
        analogy_ref=analogy_ref,
        circuit_snippet=snippet,
        demo_ref=demo_ref,
    )


def _parse_quiz_item(raw: dict, where: str) -> QuizItem:
    choices = _require(raw, "choices", list, where)
    if not all(isinstance(c, str) for c in choices):
        raise ValueError(f"{where}: quiz choices must be strings")
    return QuizItem(
        question=_require(raw, "question", str, where),
        choices=tuple(choices),
        answer_index=_require(raw, "answer_index", int, where),
        explanation=_require(raw, "explanation", str, where),
    )


def _parse_lesson(raw: dict, where: str) -> Lesson:
    version = raw.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"{where}: unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")
    sections_raw = _require(raw, "sections", list, where)
    quiz_raw = raw.get("quiz", [])
    if not isinstance(quiz_raw, list):
        raise ValueError(f"{where}: quiz must be a list")
    banner = raw.get("banner")
    if banner is not None and not isinstance(banner, str):
        raise ValueError(f"{where}: banner must be a string")
    return Lesson(
        id=_require(raw, "id", str, where),
        layer=_require(raw, "layer", int, where),
        title=_require(raw, "title", str, where),
        sections=tuple(_parse_section(s, where) for s in sections_raw),
        quiz=tuple(_parse_quiz_item(q, where) for q in quiz_raw),
        banner=banner,
    )


def load_catalog(source: Path | str | None = None) -> tuple[Catalog, list[ContentError]]:
    """Load a catalog from a content directory (bundled default).

    Returns the catalog plus a list of content errors; files that fail
    to parse are skipped so one bad file never hides the rest.  The
    returned errors include catalog-level violations, so an empty error
    list means the catalog is fully consistent.
    """
    root = Path(source) if source is not None else BUNDLED_CONTENT_DIR
    errors: list[ContentError] = []
    analogies: list[AnalogyEntry] = []
    lessons: list[Lesson] = []

    if not root.is_dir():
        return Catalog((), ()), [ContentError(str(root), None, "content directory not found")]

    analogy_path = root / "analogies.json"
    if analogy_path.exists():
        try:
            raw = json.loads(analogy_path.read_text(encoding="utf-8"))
            version = raw.get("schema_version")
            if version != SCHEMA_VERSION:
                raise ValueError(f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")
            for entry_raw in _require(raw, "analogies", list, analogy_path.name):
                analogies.append(_parse_analogy(entry_raw, analogy_path.name))
        except (ValueError, OSError) as exc:
            errors.append(ContentError(str(analogy_path), None, str(exc)))

    lessons_dir = root / "lessons"
    if lessons_dir.is_dir():
        for path in sorted(lessons_dir.glob("*.json")):
            try:
                raw = json.loads(path.read_text(encoding="utf-8"))
                lessons.append(_parse_lesson(raw, path.name))
            except (ValueError, OSError) as exc:
                errors.append(ContentError(str(path), None, str(exc)))

    catalog = Catalog(analogies=tuple(analogies), lessons=tuple(lessons))
    for violation in validate_catalog(catalog):
        errors.append(ContentError(None, violation.lesson_id, violation.message))
    return catalog, errors


def validate_catalog(catalog: Catalog) -> list[CatalogViolation]:
    """Check every catalog invariant; an empty list means ok."""
    violations: list[CatalogViolation] = []

    seen_analogy_ids: set[str] = set()
    for entry in catalog.analogies:
        if entry.id in seen_analogy_ids:
            violations.append(CatalogViolation(None, f"duplicate analogy id '{entry.id}'"))
        seen_analogy_ids.add(entry.id)
        if not entry.body.strip():
            violations.append(CatalogViolation(None, f"analogy '{entry.id}' has an empty body"))
        if not entry.source_table.strip():
            violations.append(CatalogViolation(None, f"analogy '{entry.id}' is missing its source_table tag"))

    seen_lesson_ids: set[str] = set()
    for lesson in catalog.lessons:
        if lesson.id in seen_lesson_ids:
            violations.append(CatalogViolation(lesson.id, f"duplicate lesson id '{lesson.id}'"))
        seen_lesson_ids.add(lesson.id)
        if lesson.layer not in (1, 2):
            violations.append(CatalogViolation(lesson.id, f"layer must be 1 or 2, got {lesson.layer}"))
        if not lesson.title.strip():
            violations.append(CatalogViolation(lesson.id, "title is empty"))

        for index, section in enumerate(lesson.sections):
            where = f"section {index}"
            if not section.prose.strip():
                violations.append(CatalogViolation(lesson.id, f"{where}: prose is empty"))
            if section.analogy_ref is not None and section.analogy_ref not in seen_analogy_ids:
                violations.append(
                    CatalogViolation(
                        lesson.id,
                        f"{where}: analogy_ref '{section.analogy_ref}' does not match any analogy id",
                    )
                )
            if section.circuit_snippet is not None:
                violations.extend(_check_snippet(lesson.id, where, section.circuit_snippet))
            if section.demo_ref is not None:
                violations.extend(_check_demo_ref(lesson.id, where, section.demo_ref))

        for index, item in enumerate(lesson.quiz):
            where = f"quiz item {index}"
            if len(item.choices) < 2:
                violations.append(CatalogViolation(lesson.id, f"{where}: needs at least 2 choices"))
            if not 0 <= item.answer_index < len(item.choices):
                violations.append(
                    CatalogViolation(
                        lesson.id,
                        f"{where}: answer_index {item.answer_index} out of range for {len(item.choices)} choices",
                    )
                )
            if not item.question.strip():
                violations.append(CatalogViolation(lesson.id, f"{where}: question is empty"))

    return violations


def _check_snippet(lesson_id: str, where: str, snippet: str) -> list[CatalogViolation]:
    try:
        circuit = dsl.parse(snippet)
    except dsl.ParseError as exc:
        return [CatalogViolation(lesson_id, f"{where}: snippet does not parse: {exc}")]
    return [
        CatalogViolation(lesson_id, f"{where}: snippet invalid: {v.message}")
        for v in dsl.validate(circuit)
    ]


def _check_demo_ref(lesson_id: str, where: str, demo_ref: DemoRef) -> list[CatalogViolation]:
    if demo_ref.op not in DEMO_SIGNATURES:
        known = ", ".join(sorted(DEMO_SIGNATURES))
        return [CatalogViolation(lesson_id, f"{where}: demo_ref op '{demo_ref.op}' is not one of: {known}")]
    required, optional = DEMO_SIGNATURES[demo_ref.op]
    given = set(demo_ref.params)
    violations = []
    for name in sorted(required - given):
        violations.append(
            CatalogViolation(lesson_id, f"{where}: demo_ref '{demo_ref.op}' missing parameter '{name}'")
        )
    for name in sorted(given - required - optional):
        violations.append(
            CatalogViolation(lesson_id, f"{where}: demo_ref '{demo_ref.op}' has unknown parameter '{name}'")
        )
    return violations


def grade_quiz(quiz: list[QuizItem] | tuple[QuizItem, ...], answers: list[int]) -> float:
    """Fraction of answers matching each item's answer_index."""
    if len(answers) != len(quiz):
        raise ValueError(f"expected {len(quiz)} answers, got {len(answers)}")
    if not quiz:
        return 1.0
    correct = sum(1 for item, answer in zip(quiz, answers) if answer == item.answer_index)
    return correct / len(quiz)


@dataclass
class ProgressStore:
    student_id: str = ""
    completed_sections: set[tuple[str, int]] = field(default_factory=set)
    quiz_results: list[tuple[str, float, float]] = field(default_factory=list)


@dataclass(frozen=True)
class SectionCompleted:
    lesson_id: str
    section_index: int


@dataclass(frozen=True)
class QuizTaken:
    lesson_id: str
    score: float
    timestamp: float


ProgressEvent = SectionCompleted | QuizTaken


def record_progress(store: ProgressStore, event: ProgressEvent) -> ProgressStore:
    """Apply one event; section completions are idempotent."""
    if isinstance(event, SectionCompleted):
        store.completed_sections.add((event.lesson_id, event.section_index))
    elif isinstance(event, QuizTaken):
        store.quiz_results.append((event.lesson_id, event.score, event.timestamp))
    else:
        raise TypeError(f"unknown progress event {type(event).__name__}")
    return store


def persist(store: ProgressStore, path: Path | str) -> None:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "student_id": store.student_id,
        "completed_sections": [list(pair) for pair in sorted(store.completed_sections)],
        "quiz_results": [list(entry) for entry in store.quiz_results],
    }
    try:
        Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write progress file {path}: {exc}") from exc


def load_progress(path: Path | str) -> ProgressStore:
    """Read a progress file; a missing file yields a fresh empty store."""
    file_path = Path(path)
    if not file_path.exists():
        return ProgressStore()
    try:
        raw = json.loads(file_path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise OSError(f"cannot read progress file {path}: {exc}") from exc
    version = raw.get("schema_version")
    if version != SCHEMA_VERSION:
        raise OSError(f"cannot read progress file {path}: unsupported schema_version {version!r}")
    return ProgressStore(
        student_id=raw.get("student_id", ""),
        completed_sections={(str(l), int(i)) for l, i in raw.get("completed_sections", [])},
        quiz_results=[(str(l), float(s), float(t)) for l, s, t in raw.get("quiz_results", [])],
    )


def dangling_references(store: ProgressStore, catalog: Catalog) -> list[str]:
    """Lesson ids referenced by progress that the catalog does not contain."""
    known = {lesson.id for lesson in catalog.lessons}
    referenced = {lid for lid, _ in store.completed_sections}
    referenced.update(lid for lid, _, _ in store.quiz_results)
    return sorted(referenced - known)
