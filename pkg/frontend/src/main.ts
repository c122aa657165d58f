import { ApiClient, ApiError } from "./api.js";
import { renderBlochView } from "./bloch.js";
import { GatePalette } from "./circuit.js";
import { GroverPanel } from "./grover.js";
import { LessonBrowser } from "./lessons.js";
import { sessionFromSnippet, UiSession } from "./session.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  textContent?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (textContent) node.textContent = textContent;
  return node;
}

function apiBaseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  if (fromQuery) return fromQuery.replace(/\/$/, "");
  // same-origin when the page is served next to the API, else the default port
  return window.location.protocol.startsWith("http") ? "" : "http://localhost:8000";
}

/** Assemble the page: session controls, rink, palette, demos, lessons. */
export function boot(root: HTMLElement, api: ApiClient): void {
  root.replaceChildren();

  const header = el("header", "top-bar");
  header.appendChild(el("h1", undefined, "qana: quantum playground"));
  const status = el("span", "status-line", "no session yet");
  header.appendChild(status);
  root.appendChild(header);

  const layout = el("main", "layout");
  const lessonsPane = el("aside", "lessons-pane");
  const centerPane = el("section", "session-pane");
  const demosPane = el("aside", "demos-pane");
  layout.append(lessonsPane, centerPane, demosPane);
  root.appendChild(layout);

  // session controls
  const controls = el("div", "session-controls");
  const qubitsInput = el("input") as HTMLInputElement;
  qubitsInput.type = "number";
  qubitsInput.min = "1";
  qubitsInput.max = "20";
  qubitsInput.value = "2";
  qubitsInput.className = "qubits-input";
  const startBtn = el("button", "start-session", "new session");
  const resetBtn = el("button", "reset-session", "reset");
  resetBtn.disabled = true;
  controls.append("qubits ", qubitsInput, startBtn, resetBtn);
  centerPane.appendChild(controls);

  const blochBox = el("div", "bloch-view");
  const paletteBox = el("div", "palette");
  centerPane.append(blochBox, paletteBox);
  renderBlochView(blochBox, null);

  let session: UiSession | null = null;

  const attach = (next: UiSession) => {
    session = next;
    status.textContent = `session ${next.sessionId.slice(0, 8)}, ${next.numQubits} qubits`;
    resetBtn.disabled = false;
    renderBlochView(blochBox, next.view);
    new GatePalette(paletteBox, next);
    next.onChange(() => renderBlochView(blochBox, next.view));
  };

  startBtn.addEventListener("click", () => {
    void UiSession.create(api, Number(qubitsInput.value))
      .then(attach)
      .catch((err) => {
        status.textContent = err instanceof ApiError ? err.message : String(err);
      });
  });
  resetBtn.addEventListener("click", () => {
    void session?.reset();
  });

  // Grover demo panel
  demosPane.appendChild(el("h3", undefined, "Grover search"));
  const groverForm = el("div", "grover-form");
  const nInput = el("input") as HTMLInputElement;
  nInput.type = "number";
  nInput.value = "16";
  nInput.className = "grover-n";
  const markedInput = el("input") as HTMLInputElement;
  markedInput.type = "number";
  markedInput.value = "5";
  markedInput.className = "grover-marked";
  const runGrover = el("button", "grover-run", "run");
  groverForm.append("items ", nInput, " marked ", markedInput, runGrover);
  demosPane.appendChild(groverForm);
  const groverBox = el("div", "grover-panel");
  demosPane.appendChild(groverBox);
  const groverPanel = new GroverPanel(groverBox, api);
  runGrover.addEventListener("click", () => {
    void groverPanel.load(Number(nInput.value), Number(markedInput.value));
  });

  // Shor and eavesdrop quick demos
  demosPane.appendChild(el("h3", undefined, "Shor factoring"));
  const shorForm = el("div", "shor-form");
  const shorInput = el("input") as HTMLInputElement;
  shorInput.type = "number";
  shorInput.value = "15";
  const shorMode = el("select") as HTMLSelectElement;
  for (const mode of ["hybrid", "full"]) {
    const option = el("option", undefined, mode) as HTMLOptionElement;
    option.value = mode;
    shorMode.appendChild(option);
  }
  const runShor = el("button", "shor-run", "factor");
  const shorOut = el("div", "shor-result");
  shorForm.append("N ", shorInput, shorMode, runShor);
  demosPane.append(shorForm, shorOut);
  runShor.addEventListener("click", () => {
    shorOut.textContent = "working...";
    void api
      .runShor(Number(shorInput.value), shorMode.value)
      .then((report) => {
        shorOut.textContent = report.factors
          ? `${report.N} = ${report.factors[0]} x ${report.factors[1]} (${report.attempts.length} attempts)`
          : "no factors found, try again";
      })
      .catch((err) => {
        shorOut.textContent = err instanceof ApiError ? err.message : String(err);
      });
  });

  demosPane.appendChild(el("h3", undefined, "Eavesdrop check"));
  const eveForm = el("div", "eve-form");
  const eveBits = el("input") as HTMLInputElement;
  eveBits.type = "number";
  eveBits.value = "200";
  const eveIntercept = el("input") as HTMLInputElement;
  eveIntercept.type = "checkbox";
  eveIntercept.checked = true;
  const eveLabel = el("label", undefined, " intercept");
  eveLabel.prepend(eveIntercept);
  const runEve = el("button", "eve-run", "send bits");
  const eveOut = el("div", "eve-result");
  eveForm.append("bits ", eveBits, eveLabel, runEve);
  demosPane.append(eveForm, eveOut);
  runEve.addEventListener("click", () => {
    void api
      .runEavesdrop(Number(eveBits.value), eveIntercept.checked)
      .then((report) => {
        eveOut.textContent =
          `${report.mismatch_count} of ${report.num_check_bits} check bits flipped ` +
          `(rate ${report.mismatch_rate.toFixed(4)})` +
          (report.mismatch_count > 0 ? ": someone listened in" : ": channel looks clean");
      })
      .catch((err) => {
        eveOut.textContent = err instanceof ApiError ? err.message : String(err);
      });
  });

  // lessons
  const browser = new LessonBrowser(lessonsPane, api, {
    onRunSnippet: (snippet) => {
      void sessionFromSnippet(api, snippet)
        .then(attach)
        .catch((err) => {
          status.textContent = err instanceof ApiError ? err.message : String(err);
        });
    },
  });
  void browser.load().catch(() => {
    lessonsPane.textContent = "lesson catalog unavailable";
  });
}

const appRoot = typeof document !== "undefined" ? document.getElementById("app") : null;
if (appRoot) {
  boot(appRoot, new ApiClient(apiBaseUrl()));
}
