import { describe, expect, it } from "vitest";
import { ApiClient } from "../src/api.js";
import { sessionFromSnippet, UiSession } from "../src/session.js";
import type { InstructionResult, SessionCreated } from "../src/types.js";
import { fixture, gatedFetch, instructionCalls, scriptedFetch } from "./helpers.js";

const created = fixture<SessionCreated>("session_create_q1.json");
const afterX = fixture<InstructionResult>("instr_x0.json");
const afterH = fixture<InstructionResult>("instr_h0.json");

async function makeSession(extra: Parameters<typeof scriptedFetch>[0]) {
  const { fetch, calls } = scriptedFetch([{ body: created }, ...extra]);
  const session = await UiSession.create(new ApiClient("", fetch), 1);
  return { session, calls };
}

describe("UiSession mutations", () => {
  it("replaces the cached view from the instruction response", async () => {
    const { session } = await makeSession([{ body: afterX }]);
    expect(session.view.bloch[0].z === 1).toBe(true);
    const result = await session.applyInstruction("x 0");
    expect(result.ok).toBe(true);
    expect(session.view).toEqual(afterX.state_view);
    expect(session.view.bloch[0].z === -1).toBe(true);
  });

  it("appends the canonical line to the local history", async () => {
    const { session } = await makeSession([{ body: afterX }]);
    await session.applyInstruction("  X   0 ");
    expect(session.history).toEqual(["x 0"]);
  });

  it("keeps the view and history on a rejected instruction", async () => {
    const { session } = await makeSession([
      { status: 400, body: fixture("error_range.json") },
    ]);
    const before = session.view;
    const result = await session.applyInstruction("x 5");
    expect(result.ok).toBe(false);
    expect("error" in result && result.error.status).toBe(400);
    expect(session.view).toBe(before);
    expect(session.history).toEqual([]);
  });

  it("surfaces measurement outcomes and records the line", async () => {
    const { session } = await makeSession([
      { body: { outcome: 1, state_view: afterX.state_view } },
    ]);
    const result = await session.measure(0, "z");
    expect(result.ok && result.outcome).toBe(1);
    expect(session.history).toEqual(["measure 0 z"]);
  });

  it("reset restores a fresh view and clears history", async () => {
    const { session } = await makeSession([
      { body: afterX },
      { body: { state_view: created.state_view } },
    ]);
    await session.applyInstruction("x 0");
    await session.reset();
    expect(session.history).toEqual([]);
    expect(session.view).toEqual(created.state_view);
  });
});

describe("pendingAction discipline", () => {
  it("ignores a second mutation while one is in flight", async () => {
    const gate = gatedFetch({ body: afterH });
    // session creation resolves immediately, everything after waits on the gate
    let first = true;
    const fetchImpl: typeof gate.fetch = (input, init) => {
      if (first) {
        first = false;
        return Promise.resolve(
          new Response(JSON.stringify(created), {
            status: 200,
            headers: { "content-type": "application/json" },
          }),
        );
      }
      return gate.fetch(input, init);
    };
    const session = await UiSession.create(new ApiClient("", fetchImpl), 1);

    const inFlight = session.applyInstruction("h 0");
    expect(session.pendingAction).toBe(true);
    const second = await session.applyInstruction("x 0");
    expect(second).toEqual({ ok: false, ignored: true });
    expect(gate.calls).toHaveLength(1);

    gate.release();
    const result = await inFlight;
    expect(result.ok).toBe(true);
    expect(session.pendingAction).toBe(false);
    expect(session.history).toEqual(["h 0"]);
  });

  it("clears pendingAction after a failure", async () => {
    const { session } = await makeSession([
      { status: 400, body: { message: "empty instruction" } },
      { body: afterX },
    ]);
    await session.applyInstruction("");
    expect(session.pendingAction).toBe(false);
    const retry = await session.applyInstruction("x 0");
    expect(retry.ok).toBe(true);
  });

  it("notifies listeners on both edges of a mutation", async () => {
    const { session } = await makeSession([{ body: afterX }]);
    const seen: boolean[] = [];
    session.onChange((s) => seen.push(s.pendingAction));
    await session.applyInstruction("x 0");
    expect(seen).toEqual([true, false]);
  });
});

describe("sessionFromSnippet", () => {
  it("creates the register from the header and replays the lines", async () => {
    const bell = fixture<{ fresh: unknown; after_h: unknown; after_cnot: unknown }>(
      "bell_sequence.json",
    );
    const { fetch, calls } = scriptedFetch([
      { body: { session_id: "snip", state_view: bell.fresh } },
      { body: bell.after_h },
      { body: bell.after_cnot },
    ]);
    const snippet = "qubits 2\n# build a Bell pair\nh 0\ncnot 0 1\n";
    const session = await sessionFromSnippet(new ApiClient("", fetch), snippet);
    expect(calls[0].body).toEqual({ num_qubits: 2, seed: null });
    expect(instructionCalls(calls).map((c) => (c.body as { dsl_line: string }).dsl_line)).toEqual([
      "h 0",
      "cnot 0 1",
    ]);
    expect(session.history).toEqual(["h 0", "cnot 0 1"]);
  });

  it("routes measure lines through the measurement endpoint", async () => {
    const { fetch, calls } = scriptedFetch([
      { body: created },
      { body: afterH },
      { body: { outcome: 0, state_view: created.state_view } },
    ]);
    await sessionFromSnippet(new ApiClient("", fetch), "qubits 1\nh 0\nmeasure 0 z\n");
    expect(calls[2].url).toBe("/api/sessions/c7890329f8bc566f78f955cfa5988200/measure");
    expect(calls[2].body).toEqual({ qubit: 0, basis: "z" });
  });

  it("rejects snippets without a register header", async () => {
    const { fetch } = scriptedFetch([]);
    await expect(sessionFromSnippet(new ApiClient("", fetch), "h 0\n")).rejects.toThrow(
      "no qubits header",
    );
  });
});
