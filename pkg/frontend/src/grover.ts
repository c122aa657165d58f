import { ApiClient, ApiError } from "./api.js";
import type { GroverReport } from "./types.js";

// Past this many indices the unmarked bars collapse into one aggregate bar.
const MAX_INDEX_BARS = 32;
const FRAME_MS = 450;

/**
 * Animated amplitude-amplification panel. One frame per Grover iteration:
 * frame k draws the marked index at the squared trace amplitude after k
 * iterations, with the rest of the unit probability spread evenly over the
 * unmarked indices (display arithmetic on the reported number, not a
 * simulation). A toggle switches to the signed per-iteration amplitudes to
 * show interference pushing the marked amplitude around.
 */
export class GroverPanel {
  report: GroverReport | null = null;
  frame = 0;
  signedView = false;
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private readonly container: HTMLElement,
    private readonly api: ApiClient,
  ) {}

  async load(n: number, marked: number, iterations?: number): Promise<void> {
    this.pause();
    try {
      this.report = await this.api.runGrover(n, marked, iterations);
    } catch (err) {
      this.report = null;
      this.renderError(err instanceof ApiError ? err.message : String(err));
      return;
    }
    this.frame = this.frameCount() > 0 ? 1 : 0;
    this.render();
  }

  frameCount(): number {
    return this.report ? this.report.iterations_run : 0;
  }

  goTo(frame: number): void {
    if (!this.report) return;
    this.frame = Math.max(this.frameCount() > 0 ? 1 : 0, Math.min(frame, this.frameCount()));
    this.render();
  }

  next(): void {
    if (this.frame >= this.frameCount()) {
      this.pause();
      return;
    }
    this.goTo(this.frame + 1);
  }

  play(): void {
    if (this.timer !== null || this.frameCount() === 0) return;
    if (this.frame >= this.frameCount()) this.goTo(1);
    this.timer = setInterval(() => this.next(), FRAME_MS);
    this.render();
  }

  pause(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  get playing(): boolean {
    return this.timer !== null;
  }

  /** Probability of the marked index at a 1-based frame. */
  markedProbability(frame: number): number {
    const amp = this.report?.marked_amplitude_trace[frame - 1] ?? 0;
    return amp * amp;
  }

  private renderError(message: string): void {
    this.container.replaceChildren();
    const box = document.createElement("div");
    box.className = "demo-error";
    box.textContent = message;
    this.container.appendChild(box);
  }

  private render(): void {
    const report = this.report;
    if (!report) return;
    this.container.replaceChildren();

    const caption = document.createElement("div");
    caption.className = "grover-caption";
    caption.textContent =
      `searching ${report.search_space_size} items` +
      `${report.padded_size !== report.search_space_size ? ` (padded to ${report.padded_size})` : ""}, ` +
      `marked index ${report.marked_index}, ` +
      `${report.pedagogical_query_count} pedagogical queries vs ${report.search_space_size} classical`;
    this.container.appendChild(caption);

    const label = document.createElement("div");
    label.className = "grover-frame-label";
    label.textContent =
      this.frameCount() === 0
        ? "0 iterations run"
        : `iteration ${this.frame} of ${this.frameCount()}`;
    this.container.appendChild(label);

    if (this.frameCount() > 0) {
      this.container.appendChild(this.signedView ? this.renderSignedBars() : this.renderIndexBars());
    }

    if (this.frame === this.frameCount() && this.frameCount() > 0) {
      const final = document.createElement("div");
      final.className = "grover-final";
      final.textContent =
        `marked index ${report.marked_index} found with probability ` +
        report.final_success_probability.toFixed(6);
      this.container.appendChild(final);
    }

    this.container.appendChild(this.renderControls());
  }

  private renderIndexBars(): HTMLElement {
    const report = this.report!;
    const prob = this.markedProbability(this.frame);
    const rest = Math.max(0, 1 - prob);
    const chart = document.createElement("div");
    chart.className = "grover-bars";

    const addBar = (index: string, value: number, marked: boolean) => {
      const wrap = document.createElement("div");
      wrap.className = "gbar-wrap";
      const bar = document.createElement("div");
      bar.className = marked ? "gbar marked-index" : "gbar";
      if (marked && this.frame === this.frameCount()) bar.classList.add("found");
      bar.dataset.index = index;
      bar.dataset.prob = String(value);
      bar.style.height = `${(value * 100).toFixed(2)}%`;
      const tag = document.createElement("span");
      tag.className = "gbar-tag";
      tag.textContent = index;
      wrap.appendChild(bar);
      wrap.appendChild(tag);
      chart.appendChild(wrap);
    };

    if (report.padded_size <= MAX_INDEX_BARS) {
      const others = report.padded_size > 1 ? rest / (report.padded_size - 1) : 0;
      for (let i = 0; i < report.padded_size; i += 1) {
        const marked = i === report.marked_index;
        addBar(String(i), marked ? prob : others, marked);
      }
    } else {
      addBar(String(report.marked_index), prob, true);
      addBar("rest (avg)", rest / (report.padded_size - 1), false);
    }
    return chart;
  }

  private renderSignedBars(): HTMLElement {
    const report = this.report!;
    const chart = document.createElement("div");
    chart.className = "grover-bars signed";
    report.marked_amplitude_trace.slice(0, this.frame).forEach((amp, i) => {
      const wrap = document.createElement("div");
      wrap.className = "gbar-wrap";
      const bar = document.createElement("div");
      bar.className = amp < 0 ? "gbar amp neg" : "gbar amp";
      bar.dataset.iteration = String(i + 1);
      bar.dataset.amp = String(amp);
      bar.style.height = `${(Math.abs(amp) * 50).toFixed(2)}%`;
      const tag = document.createElement("span");
      tag.className = "gbar-tag";
      tag.textContent = String(i + 1);
      wrap.appendChild(bar);
      wrap.appendChild(tag);
      chart.appendChild(wrap);
    });
    return chart;
  }

  private renderControls(): HTMLElement {
    const controls = document.createElement("div");
    controls.className = "grover-controls";

    const play = document.createElement("button");
    play.className = "grover-play";
    play.textContent = this.playing ? "pause" : "play";
    play.addEventListener("click", () => {
      if (this.playing) this.pause();
      else this.play();
      this.render();
    });
    controls.appendChild(play);

    const step = document.createElement("button");
    step.className = "grover-step";
    step.textContent = "step";
    step.addEventListener("click", () => this.next());
    controls.appendChild(step);

    const toggle = document.createElement("label");
    toggle.className = "grover-signed-toggle";
    const box = document.createElement("input");
    box.type = "checkbox";
    box.checked = this.signedView;
    box.addEventListener("change", () => {
      this.signedView = box.checked;
      this.render();
    });
    toggle.appendChild(box);
    toggle.appendChild(document.createTextNode(" signed amplitudes"));
    controls.appendChild(toggle);

    return controls;
  }
}
