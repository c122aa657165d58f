import type { AnalogyCard } from "./types.js";
import type { ActionResult, UiSession } from "./session.js";

interface GateSpec {
  label: string;
  mnemonic: string;
  arity: 0 | 1 | 2 | 3;
  angled?: boolean;
}

const GATES: GateSpec[] = [
  { label: "X", mnemonic: "x", arity: 1 },
  { label: "Y", mnemonic: "y", arity: 1 },
  { label: "Z", mnemonic: "z", arity: 1 },
  { label: "H", mnemonic: "h", arity: 1 },
  { label: "Phase", mnemonic: "phase", arity: 1, angled: true },
  { label: "CPhase", mnemonic: "cphase", arity: 2, angled: true },
  { label: "CNOT", mnemonic: "cnot", arity: 2 },
  { label: "Toffoli", mnemonic: "toffoli", arity: 3 },
  { label: "Barrier", mnemonic: "barrier", arity: 0 },
];

const PI_OVER_4 = "0.7853981633974483";

/**
 * Gate buttons, target pickers, and measurement controls for one session.
 * Each click is exactly one POST; while it is in flight every control is
 * disabled and further clicks fall through `pendingAction` and are ignored.
 * Rejected instructions surface as an inline error and leave the view alone.
 */
export class GatePalette {
  private buttons: HTMLButtonElement[] = [];
  private targetSelects: HTMLSelectElement[] = [];
  private angleInput!: HTMLInputElement;
  private basisSelect!: HTMLSelectElement;
  private analogyCard!: HTMLElement;
  private historyList!: HTMLOListElement;
  private errorBox!: HTMLElement;
  private outcomeLine!: HTMLElement;

  constructor(
    private readonly container: HTMLElement,
    private readonly session: UiSession,
  ) {
    this.build();
    session.onChange(() => this.sync());
    this.sync();
  }

  private build(): void {
    this.container.replaceChildren();

    const buttonRow = document.createElement("div");
    buttonRow.className = "palette-buttons";
    for (const gate of GATES) {
      const btn = document.createElement("button");
      btn.className = "gate-btn";
      btn.dataset.gate = gate.mnemonic;
      btn.textContent = gate.label;
      btn.addEventListener("click", () => void this.clickGate(gate));
      buttonRow.appendChild(btn);
      this.buttons.push(btn);
    }
    this.container.appendChild(buttonRow);

    const targets = document.createElement("div");
    targets.className = "palette-targets";
    const names = ["target", "second", "third"];
    for (let slot = 0; slot < 3; slot += 1) {
      const label = document.createElement("label");
      label.textContent = `${names[slot]} `;
      const select = document.createElement("select");
      select.className = `target-select target-${slot}`;
      for (let q = 0; q < this.session.numQubits; q += 1) {
        const option = document.createElement("option");
        option.value = String(q);
        option.textContent = `q${q}`;
        if (q === Math.min(slot, this.session.numQubits - 1)) option.selected = true;
        select.appendChild(option);
      }
      label.appendChild(select);
      targets.appendChild(label);
      this.targetSelects.push(select);
    }
    const angleLabel = document.createElement("label");
    angleLabel.textContent = "angle (rad) ";
    this.angleInput = document.createElement("input");
    this.angleInput.type = "text";
    this.angleInput.className = "angle-input";
    this.angleInput.value = PI_OVER_4;
    angleLabel.appendChild(this.angleInput);
    targets.appendChild(angleLabel);
    this.container.appendChild(targets);

    const measureRow = document.createElement("div");
    measureRow.className = "measure-controls";
    const basisLabel = document.createElement("label");
    basisLabel.textContent = "basis ";
    this.basisSelect = document.createElement("select");
    this.basisSelect.className = "basis-select";
    for (const basis of ["z", "x"]) {
      const option = document.createElement("option");
      option.value = basis;
      option.textContent = basis;
      this.basisSelect.appendChild(option);
    }
    basisLabel.appendChild(this.basisSelect);
    measureRow.appendChild(basisLabel);
    const measureBtn = document.createElement("button");
    measureBtn.className = "measure-btn";
    measureBtn.textContent = "Measure";
    measureBtn.addEventListener("click", () => void this.clickMeasure());
    measureRow.appendChild(measureBtn);
    this.buttons.push(measureBtn);
    this.outcomeLine = document.createElement("span");
    this.outcomeLine.className = "outcome-line";
    measureRow.appendChild(this.outcomeLine);
    this.container.appendChild(measureRow);

    this.errorBox = document.createElement("div");
    this.errorBox.className = "inline-error";
    this.errorBox.hidden = true;
    this.container.appendChild(this.errorBox);

    this.analogyCard = document.createElement("div");
    this.analogyCard.className = "analogy-card";
    this.analogyCard.hidden = true;
    this.container.appendChild(this.analogyCard);

    const historyHeader = document.createElement("h3");
    historyHeader.textContent = "history";
    this.container.appendChild(historyHeader);
    this.historyList = document.createElement("ol");
    this.historyList.className = "history-strip";
    this.container.appendChild(this.historyList);
  }

  private composeLine(gate: GateSpec): string {
    const picked = this.targetSelects.map((select) => select.value);
    const parts: string[] = [gate.mnemonic];
    if (gate.angled) parts.push(this.angleInput.value.trim());
    parts.push(...picked.slice(0, gate.arity));
    return parts.join(" ");
  }

  private async clickGate(gate: GateSpec): Promise<void> {
    if (this.session.pendingAction) return;
    this.handleResult(await this.session.applyInstruction(this.composeLine(gate)));
  }

  private async clickMeasure(): Promise<void> {
    if (this.session.pendingAction) return;
    const qubit = Number(this.targetSelects[0].value);
    const basis = this.basisSelect.value as "z" | "x";
    const result = await this.session.measure(qubit, basis);
    this.handleResult(result);
    if (result.ok && result.outcome !== undefined) {
      this.outcomeLine.textContent = `q${qubit} (${basis}) -> ${result.outcome}`;
    }
  }

  private handleResult(result: ActionResult): void {
    if (!result.ok) {
      if ("error" in result) this.showError(result.error.message, result.error.position);
      return;
    }
    this.errorBox.hidden = true;
    this.showAnalogy(result.analogy);
  }

  private showError(message: string, position?: { line: number; column: number }): void {
    this.errorBox.hidden = false;
    this.errorBox.textContent = position
      ? `line ${position.line}, column ${position.column}: ${message}`
      : message;
  }

  private showAnalogy(card: AnalogyCard | null): void {
    if (!card) {
      this.analogyCard.hidden = true;
      return;
    }
    this.analogyCard.hidden = false;
    this.analogyCard.replaceChildren();
    const title = document.createElement("h4");
    title.className = "analogy-title";
    title.textContent = card.title;
    const body = document.createElement("p");
    body.className = "analogy-body";
    body.textContent = card.body;
    const tag = document.createElement("span");
    tag.className = "analogy-table-tag";
    tag.textContent = `table ${card.source_table}`;
    this.analogyCard.append(title, body, tag);
  }

  /** Mirror pending state onto the controls and refresh the history strip. */
  private sync(): void {
    for (const btn of this.buttons) btn.disabled = this.session.pendingAction;
    this.historyList.replaceChildren();
    for (const line of this.session.history) {
      const item = document.createElement("li");
      item.textContent = line;
      this.historyList.appendChild(item);
    }
  }
}
