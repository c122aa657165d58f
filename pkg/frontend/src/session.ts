import { ApiClient, ApiError } from "./api.js";
import type { AnalogyCard, StateView } from "./types.js";

export type ActionResult =
  | { ok: true; analogy: AnalogyCard | null; outcome?: number }
  | { ok: false; error: ApiError }
  | { ok: false; ignored: true };

export type SessionListener = (session: UiSession) => void;

const ignored: ActionResult = { ok: false, ignored: true };

/**
 * Client-side handle on one simulator session. Every rendered visual derives
 * from `view`, the most recent StateView returned by the server; nothing is
 * simulated locally. `pendingAction` is true while exactly one mutation is in
 * flight, and any action attempted in that window is ignored, so the server
 * sees at most one in-flight mutation per session.
 */
export class UiSession {
  pendingAction = false;
  history: string[] = [];
  private listeners: SessionListener[] = [];

  private constructor(
    private readonly api: ApiClient,
    readonly sessionId: string,
    public view: StateView,
  ) {}

  static async create(api: ApiClient, numQubits: number, seed?: number): Promise<UiSession> {
    const created = await api.createSession(numQubits, seed);
    return new UiSession(api, created.session_id, created.state_view);
  }

  get numQubits(): number {
    return this.view.num_qubits;
  }

  onChange(listener: SessionListener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this);
  }

  /** One gate instruction; resolves to the analogy card on success. */
  applyInstruction(line: string): Promise<ActionResult> {
    return this.mutate(async () => {
      const result = await this.api.postInstruction(this.sessionId, line);
      this.view = result.state_view;
      this.history.push(canonicalish(line));
      return { ok: true, analogy: result.analogy };
    });
  }

  measure(qubit: number, basis: "z" | "x"): Promise<ActionResult> {
    return this.mutate(async () => {
      const result = await this.api.measure(this.sessionId, qubit, basis);
      this.view = result.state_view;
      this.history.push(`measure ${qubit} ${basis}`);
      return { ok: true, analogy: null, outcome: result.outcome };
    });
  }

  reset(): Promise<ActionResult> {
    return this.mutate(async () => {
      const result = await this.api.reset(this.sessionId);
      this.view = result.state_view;
      this.history = [];
      return { ok: true, analogy: null };
    });
  }

  async refresh(): Promise<void> {
    this.view = await this.api.getState(this.sessionId);
    this.emit();
  }

  private async mutate(call: () => Promise<ActionResult>): Promise<ActionResult> {
    if (this.pendingAction) return ignored;
    this.pendingAction = true;
    this.emit();
    try {
      return await call();
    } catch (err) {
      if (err instanceof ApiError) return { ok: false, error: err };
      throw err;
    } finally {
      this.pendingAction = false;
      this.emit();
    }
  }
}

// The server stores canonical lowercase text; mirror that in the local strip
// without re-parsing.
function canonicalish(line: string): string {
  return line.trim().toLowerCase().replace(/\s+/g, " ");
}

/**
 * Open a fresh session preloaded with a lesson snippet. The snippet's
 * `qubits N` header picks the register size; gate lines are posted in order
 * and measure lines go through the measurement endpoint.
 */
export async function sessionFromSnippet(api: ApiClient, snippet: string): Promise<UiSession> {
  const lines = snippet
    .split("\n")
    .map((line) => line.replace(/#.*$/, "").trim())
    .filter((line) => line.length > 0);
  const header = lines[0]?.match(/^qubits\s+(\d+)$/i);
  if (!header) throw new Error("snippet has no qubits header");
  const session = await UiSession.create(api, Number(header[1]));
  for (const line of lines.slice(1)) {
    const measure = line.match(/^measure\s+(\d+)\s+([xz])$/i);
    const result = measure
      ? await session.measure(Number(measure[1]), measure[2].toLowerCase() as "z" | "x")
      : await session.applyInstruction(line);
    if (!result.ok && "error" in result) throw result.error;
  }
  return session;
}
