import { afterEach, describe, expect, it, vi } from "vitest";
import { ApiClient } from "../src/api.js";
import { GroverPanel } from "../src/grover.js";
import type { GroverReport } from "../src/types.js";
import { fixture, scriptedFetch } from "./helpers.js";

const report16 = fixture<GroverReport>("grover_16_5.json");
const report4 = fixture<GroverReport>("grover_4_3.json");

const FRAME_MS = 450;

async function panelWith(body: unknown, status = 200) {
  const scripted = scriptedFetch([{ status, body }]);
  const container = document.createElement("div");
  const panel = new GroverPanel(container, new ApiClient("http://api.test", scripted.fetch));
  await panel.load(16, 5);
  return { panel, container, calls: scripted.calls };
}

function bars(container: HTMLElement): HTMLElement[] {
  return Array.from(container.querySelectorAll<HTMLElement>(".gbar"));
}

function markedBar(container: HTMLElement): HTMLElement {
  const bar = container.querySelector<HTMLElement>(".gbar.marked-index");
  if (!bar) throw new Error("no marked bar rendered");
  return bar;
}

afterEach(() => {
  vi.useRealTimers();
});

describe("frames follow the amplitude trace", () => {
  it("renders exactly iterations_run frames", async () => {
    const { panel } = await panelWith(report16);
    expect(panel.frameCount()).toBe(report16.iterations_run);
    expect(panel.frame).toBe(1);
    panel.goTo(99);
    expect(panel.frame).toBe(report16.iterations_run);
    panel.goTo(-5);
    expect(panel.frame).toBe(1);
  });

  it("marked bar height is the squared trace value at every frame", async () => {
    const { panel, container } = await panelWith(report16);
    for (let frame = 1; frame <= report16.iterations_run; frame += 1) {
      panel.goTo(frame);
      const t = report16.marked_amplitude_trace[frame - 1];
      const bar = markedBar(container);
      expect(bar.dataset.index).toBe("5");
      expect(bar.dataset.prob).toBe(String(t * t));
      expect(bar.style.height).toBe(`${(t * t * 100).toFixed(2)}%`);
      const label = container.querySelector(".grover-frame-label");
      expect(label?.textContent).toBe(`iteration ${frame} of 3`);
    }
  });

  it("spreads the leftover probability evenly over unmarked bars", async () => {
    const { panel, container } = await panelWith(report16);
    panel.goTo(2);
    const t = report16.marked_amplitude_trace[1];
    const rest = Math.max(0, 1 - t * t);
    const others = rest / (report16.padded_size - 1);
    const all = bars(container);
    expect(all).toHaveLength(16);
    let total = 0;
    for (const bar of all) {
      const prob = Number(bar.dataset.prob);
      total += prob;
      if (bar.dataset.index !== "5") expect(bar.dataset.prob).toBe(String(others));
    }
    expect(total).toBeCloseTo(1, 10);
  });

  it("highlights the marked index on the final frame", async () => {
    const { panel, container } = await panelWith(report16);
    panel.goTo(2);
    expect(markedBar(container).classList.contains("found")).toBe(false);
    expect(container.querySelector(".grover-final")).toBeNull();

    panel.goTo(3);
    expect(markedBar(container).classList.contains("found")).toBe(true);
    expect(container.querySelector(".grover-final")?.textContent).toBe(
      "marked index 5 found with probability 0.961319",
    );
  });

  it("one optimal iteration on four items yields a single full bar", async () => {
    const { container } = await panelWith(report4);
    const all = bars(container);
    expect(all).toHaveLength(4);
    const marked = markedBar(container);
    expect(marked.dataset.index).toBe("3");
    expect(marked.style.height).toBe("100.00%");
    for (const bar of all) {
      if (bar !== marked) expect(bar.style.height).toBe("0.00%");
    }
    expect(container.querySelector(".grover-final")?.textContent).toContain("marked index 3");
  });
});

describe("large spaces and edge reports", () => {
  it("collapses unmarked indices into one aggregate bar past 32", async () => {
    const wide: GroverReport = {
      search_space_size: 1000,
      padded_size: 1024,
      marked_index: 700,
      iterations_run: 2,
      marked_amplitude_trace: [0.09, 0.15],
      final_success_probability: 0.0225,
      pedagogical_query_count: 3,
      optimal_iterations: 25,
    };
    const { panel, container } = await panelWith(wide);
    panel.goTo(2);
    const all = bars(container);
    expect(all).toHaveLength(2);
    expect(all[0].dataset.index).toBe("700");
    expect(all[0].dataset.prob).toBe(String(0.15 * 0.15));
    expect(all[1].dataset.index).toBe("rest (avg)");
    expect(all[1].dataset.prob).toBe(String((1 - 0.15 * 0.15) / 1023));
    expect(container.querySelector(".grover-caption")?.textContent).toContain("padded to 1024");
  });

  it("reports zero iterations without drawing bars", async () => {
    const degenerate: GroverReport = {
      search_space_size: 1,
      padded_size: 1,
      marked_index: 0,
      iterations_run: 0,
      marked_amplitude_trace: [],
      final_success_probability: 1.0,
      pedagogical_query_count: 1,
      optimal_iterations: 0,
    };
    const { panel, container } = await panelWith(degenerate);
    expect(panel.frame).toBe(0);
    expect(container.querySelector(".grover-frame-label")?.textContent).toBe("0 iterations run");
    expect(bars(container)).toHaveLength(0);
    expect(container.querySelector(".grover-final")).toBeNull();
    expect(container.querySelector(".grover-controls")).not.toBeNull();
  });

  it("shows the API message on a rejected run", async () => {
    const { panel, container } = await panelWith({ message: "marked must be below n" }, 400);
    expect(panel.report).toBeNull();
    expect(panel.frameCount()).toBe(0);
    expect(container.querySelector(".demo-error")?.textContent).toBe("marked must be below n");
    expect(bars(container)).toHaveLength(0);
  });
});

describe("playback", () => {
  it("steps one frame per tick and pauses at the end", async () => {
    vi.useFakeTimers();
    const { panel } = await panelWith(report16);
    panel.play();
    expect(panel.playing).toBe(true);
    vi.advanceTimersByTime(FRAME_MS);
    expect(panel.frame).toBe(2);
    vi.advanceTimersByTime(FRAME_MS);
    expect(panel.frame).toBe(3);
    vi.advanceTimersByTime(FRAME_MS);
    expect(panel.playing).toBe(false);
    expect(panel.frame).toBe(3);
  });

  it("restarts from the first frame when played at the end", async () => {
    vi.useFakeTimers();
    const { panel } = await panelWith(report16);
    panel.goTo(3);
    panel.play();
    expect(panel.frame).toBe(1);
    expect(panel.playing).toBe(true);
    panel.pause();
    expect(panel.playing).toBe(false);
    vi.advanceTimersByTime(FRAME_MS * 5);
    expect(panel.frame).toBe(1);
  });

  it("wires the play and step buttons", async () => {
    vi.useFakeTimers();
    const { panel, container } = await panelWith(report16);
    const step = container.querySelector<HTMLButtonElement>(".grover-step");
    step?.click();
    expect(panel.frame).toBe(2);

    const play = container.querySelector<HTMLButtonElement>(".grover-play");
    expect(play?.textContent).toBe("play");
    play?.click();
    expect(panel.playing).toBe(true);
    expect(container.querySelector(".grover-play")?.textContent).toBe("pause");
  });
});

describe("signed amplitude view", () => {
  it("draws one signed bar per elapsed iteration", async () => {
    const { panel, container } = await panelWith(report16);
    panel.signedView = true;
    panel.goTo(2);
    const amps = Array.from(container.querySelectorAll<HTMLElement>(".gbar.amp"));
    expect(amps).toHaveLength(2);
    amps.forEach((bar, i) => {
      expect(bar.dataset.iteration).toBe(String(i + 1));
      expect(bar.dataset.amp).toBe(String(report16.marked_amplitude_trace[i]));
      expect(bar.classList.contains("neg")).toBe(false);
    });
  });

  it("flags negative amplitudes", async () => {
    const overshoot: GroverReport = {
      ...report4,
      iterations_run: 2,
      marked_amplitude_trace: [0.9999999999999998, -0.5],
    };
    const { panel, container } = await panelWith(overshoot);
    panel.signedView = true;
    panel.goTo(2);
    const amps = Array.from(container.querySelectorAll<HTMLElement>(".gbar.amp"));
    expect(amps).toHaveLength(2);
    expect(amps[1].classList.contains("neg")).toBe(true);
    expect(amps[1].dataset.amp).toBe("-0.5");
  });

  it("toggles through the checkbox", async () => {
    const { panel, container } = await panelWith(report16);
    const box = container.querySelector<HTMLInputElement>(".grover-signed-toggle input");
    expect(box?.checked).toBe(false);
    if (box) {
      box.checked = true;
      box.dispatchEvent(new Event("change"));
    }
    expect(panel.signedView).toBe(true);
    expect(container.querySelector(".grover-bars.signed")).not.toBeNull();
  });
});
