import { describe, expect, it } from "vitest";
import {
  CAMERA,
  hasSpinArrow,
  markerFor,
  project,
  renderBlochView,
} from "../src/bloch.js";
import type { InstructionResult, SessionCreated, StateView } from "../src/types.js";
import { fixture, sameNumber } from "./helpers.js";

const groundView = fixture<SessionCreated>("session_create_q1.json").state_view;
const plusView = fixture<InstructionResult>("instr_h0.json").state_view;
const iView = fixture<InstructionResult>("instr_phase_i.json").state_view;
const bellView = fixture<{ after_cnot: InstructionResult }>("bell_sequence.json").after_cnot
  .state_view;

// geometry constants used by the renderer
const SIZE = 230;
const RADIUS = 78;
const CX = SIZE / 2;
const CY = SIZE / 2;

function renderedMarkers(view: StateView): SVGCircleElement[] {
  const box = document.createElement("div");
  renderBlochView(box, view);
  return Array.from(box.querySelectorAll<SVGCircleElement>("circle.skater"));
}

function markerPosition(marker: SVGCircleElement) {
  return {
    x: Number(marker.getAttribute("data-x")),
    y: Number(marker.getAttribute("data-y")),
    z: Number(marker.getAttribute("data-z")),
    cx: Number(marker.getAttribute("cx")),
    cy: Number(marker.getAttribute("cy")),
  };
}

describe("marker equals the API Bloch vector", () => {
  it("|0> case: marker carries (0,0,1) and sits at the north pole", () => {
    const marker = markerFor(groundView, 0);
    expect(sameNumber(marker.position.x, groundView.bloch[0].x)).toBe(true);
    expect(sameNumber(marker.position.y, groundView.bloch[0].y)).toBe(true);
    expect(sameNumber(marker.position.z, groundView.bloch[0].z)).toBe(true);

    const [dot] = renderedMarkers(groundView);
    const pos = markerPosition(dot);
    expect(sameNumber(pos.z, 1)).toBe(true);
    const expected = project(groundView.bloch[0], RADIUS, CX, CY);
    expect(pos.cx).toBe(expected.x);
    expect(pos.cy).toBe(expected.y);
    expect(pos.cy).toBe(CY - RADIUS);
  });

  it("|+> case: marker carries the exact API vector on the equator", () => {
    const apiVec = plusView.bloch[0];
    const marker = markerFor(plusView, 0);
    expect(sameNumber(marker.position.x, apiVec.x)).toBe(true);
    expect(sameNumber(marker.position.y, apiVec.y)).toBe(true);
    expect(sameNumber(marker.position.z, apiVec.z)).toBe(true);

    const [dot] = renderedMarkers(plusView);
    const pos = markerPosition(dot);
    expect(sameNumber(pos.x, apiVec.x)).toBe(true);
    const expected = project(apiVec, RADIUS, CX, CY);
    expect(pos.cx).toBe(expected.x);
    expect(pos.cy).toBe(expected.y);
    // on the equator, below and left of center under this camera
    expect(pos.cx).toBeLessThan(CX);
    expect(pos.cy).toBeGreaterThan(CY);
  });

  it("Bell case: both markers centered with entangled badges", () => {
    const dots = renderedMarkers(bellView);
    expect(dots).toHaveLength(2);
    dots.forEach((dot, q) => {
      const apiVec = bellView.bloch[q];
      const pos = markerPosition(dot);
      expect(sameNumber(pos.x, apiVec.x)).toBe(true);
      expect(sameNumber(pos.y, apiVec.y)).toBe(true);
      expect(sameNumber(pos.z, apiVec.z)).toBe(true);
      expect(pos.cx).toBe(CX);
      expect(pos.cy).toBe(CY);
      expect(dot.classList.contains("entangled")).toBe(true);
    });
    const box = document.createElement("div");
    renderBlochView(box, bellView);
    const badges = box.querySelectorAll(".entangled-badge");
    expect(badges).toHaveLength(2);
    expect(badges[0].textContent).toBe("entangled");
  });
});

describe("projection geometry", () => {
  it("maps the poles to the vertical axis", () => {
    expect(project({ x: 0, y: 0, z: 1 }, RADIUS, CX, CY)).toEqual({ x: CX, y: CY - RADIUS });
    expect(project({ x: 0, y: 0, z: -1 }, RADIUS, CX, CY)).toEqual({ x: CX, y: CY + RADIUS });
  });

  it("maps the center to the center", () => {
    expect(project({ x: 0, y: 0, z: 0 }, RADIUS, CX, CY)).toEqual({ x: CX, y: CY });
  });

  it("keeps +y to the right and +x toward the lower left", () => {
    const right = project({ x: 0, y: 1, z: 0 }, RADIUS, CX, CY);
    expect(right).toEqual({ x: CX + RADIUS, y: CY });
    const front = project({ x: 1, y: 0, z: 0 }, RADIUS, CX, CY);
    expect(front.x).toBe(CX + RADIUS * CAMERA.xRight);
    expect(front.y).toBe(CY + RADIUS * CAMERA.xDown);
  });

  it("is linear in the Bloch vector", () => {
    const v = { x: 0.3, y: -0.4, z: 0.2 };
    const p = project(v, RADIUS, CX, CY);
    const half = project({ x: v.x / 2, y: v.y / 2, z: v.z / 2 }, RADIUS, CX, CY);
    expect(half.x - CX).toBeCloseTo((p.x - CX) / 2, 12);
    expect(half.y - CY).toBeCloseTo((p.y - CY) / 2, 12);
  });
});

describe("spin direction", () => {
  it("positive phase (|i>) spins clockwise", () => {
    expect(markerFor(iView, 0).spinDirection).toBe("clockwise");
  });

  it("negative phase spins anticlockwise", () => {
    const minusI: StateView = {
      ...iView,
      bloch: [{ x: 0, y: -0.9999999999999998, z: 0 }],
    };
    expect(markerFor(minusI, 0).spinDirection).toBe("anticlockwise");
  });

  it("|+> counts as phase zero, clockwise; |-> flips", () => {
    expect(markerFor(plusView, 0).spinDirection).toBe("clockwise");
    const minus: StateView = { ...plusView, bloch: [{ x: -1, y: 0, z: 0 }] };
    expect(markerFor(minus, 0).spinDirection).toBe("anticlockwise");
  });

  it("draws an arrow on the equator but none at the poles or when entangled", () => {
    expect(hasSpinArrow(markerFor(plusView, 0))).toBe(true);
    expect(hasSpinArrow(markerFor(groundView, 0))).toBe(false);
    expect(hasSpinArrow(markerFor(bellView, 0))).toBe(false);

    const equatorBox = document.createElement("div");
    renderBlochView(equatorBox, plusView);
    expect(equatorBox.querySelectorAll(".spin-arrow")).toHaveLength(1);

    const poleBox = document.createElement("div");
    renderBlochView(poleBox, groundView);
    expect(poleBox.querySelectorAll(".spin-arrow")).toHaveLength(0);
  });
});

describe("rendering shell", () => {
  it("draws one rink per qubit with axis labels", () => {
    const box = document.createElement("div");
    renderBlochView(box, bellView);
    expect(box.querySelectorAll("svg.bloch-rink")).toHaveLength(2);
    const labels = Array.from(box.querySelectorAll(".axis-label")).map((n) => n.textContent);
    expect(labels).toContain("|0⟩");
    expect(labels).toContain("|−i⟩");
    expect(box.querySelector(".rink-legend")?.textContent).toContain("clockwise = positive");
  });

  it("renders a placeholder without a view", () => {
    const box = document.createElement("div");
    renderBlochView(box, null);
    expect(box.querySelector(".bloch-placeholder")).not.toBeNull();
    expect(box.querySelectorAll("svg")).toHaveLength(0);
  });

  it("rejects an out-of-range qubit", () => {
    expect(() => markerFor(groundView, 3)).toThrow(RangeError);
  });
});
