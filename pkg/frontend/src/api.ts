import type {
  AnalogyCard,
  EavesdropReport,
  FactorReport,
  GroverReport,
  InstructionResult,
  Lesson,
  LessonSummary,
  MeasureResult,
  QuizGrade,
  SessionCreated,
  StateView,
} from "./types.js";

/** Where a rejected instruction went wrong, when the server says. */
export interface ErrorPosition {
  line: number;
  column: number;
  offendingToken: string;
}

/**
 * Thrown whenever the server answers non-2xx. `status` carries the HTTP
 * code (400 bad input, 404 unknown, 410 expired session) and `position`
 * is set for circuit-language errors.
 */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly position?: ErrorPosition,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

const defaultFetch: FetchLike = (input, init) => globalThis.fetch(input, init);

/**
 * Thin typed client for the simulator service. The fetch implementation is
 * injectable so tests can count or script requests.
 */
export class ApiClient {
  constructor(
    readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = defaultFetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const r = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!r.ok) {
      let message = `HTTP ${r.status}`;
      let position: ErrorPosition | undefined;
      try {
        const body = await r.json();
        if (typeof body?.message === "string") message = body.message;
        if (typeof body?.line === "number") {
          position = {
            line: body.line,
            column: body.column,
            offendingToken: body.offending_token,
          };
        }
      } catch {
        // non-JSON error body, keep the status fallback
      }
      throw new ApiError(r.status, message, position);
    }
    return r.json() as Promise<T>;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  createSession(numQubits: number, seed?: number): Promise<SessionCreated> {
    return this.post("/api/sessions", { num_qubits: numQubits, seed: seed ?? null });
  }

  postInstruction(sessionId: string, dslLine: string): Promise<InstructionResult> {
    return this.post(`/api/sessions/${sessionId}/instructions`, { dsl_line: dslLine });
  }

  measure(sessionId: string, qubit: number, basis: string): Promise<MeasureResult> {
    return this.post(`/api/sessions/${sessionId}/measure`, { qubit, basis });
  }

  reset(sessionId: string): Promise<{ state_view: StateView }> {
    return this.post(`/api/sessions/${sessionId}/reset`, {});
  }

  getState(sessionId: string): Promise<StateView> {
    return this.request(`/api/sessions/${sessionId}/state`);
  }

  getHistory(sessionId: string): Promise<{ history: string[] }> {
    return this.request(`/api/sessions/${sessionId}/history`);
  }

  listLessons(): Promise<LessonSummary[]> {
    return this.request("/api/lessons");
  }

  getLesson(lessonId: string): Promise<Lesson> {
    return this.request(`/api/lessons/${encodeURIComponent(lessonId)}`);
  }

  listAnalogies(): Promise<AnalogyCard[]> {
    return this.request("/api/analogies");
  }

  submitQuiz(lessonId: string, answers: number[]): Promise<QuizGrade> {
    return this.post(`/api/quiz/${encodeURIComponent(lessonId)}`, { answers });
  }

  runGrover(n: number, marked: number, iterations?: number): Promise<GroverReport> {
    return this.post("/api/demos/grover", { n, marked, iterations: iterations ?? null });
  }

  runShor(n: number, mode = "hybrid", seed?: number): Promise<FactorReport> {
    return this.post("/api/demos/shor", { n, mode, seed: seed ?? null });
  }

  runEavesdrop(qubits: number, intercept: boolean, seed?: number): Promise<EavesdropReport> {
    return this.post("/api/demos/eavesdrop", { qubits, intercept, seed: seed ?? null });
  }
}
