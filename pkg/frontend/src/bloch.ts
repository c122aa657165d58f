import type { BlochVector, StateView } from "./types.js";

/**
 * One skater on the Bloch rink. `position` is copied verbatim from the API
 * Bloch vector; `spinDirection` renders the sign of the relative phase
 * between the |0> and |1> components (clockwise = positive, the convention
 * printed on the rink legend). At the poles the phase is undefined and no
 * spin arrow is drawn.
 */
export interface SkaterMarker {
  position: BlochVector;
  spinDirection: "clockwise" | "anticlockwise";
  entangled: boolean;
}

const SPIN_EPS = 1e-9;

export function markerFor(view: StateView, qubit: number): SkaterMarker {
  const position = view.bloch[qubit];
  if (!position) throw new RangeError(`qubit ${qubit} out of range`);
  // sin(phase) has the sign of y; on the y=0 meridian, x < 0 means phase pi
  const anticlockwise = position.y < 0 || (position.y === 0 && position.x < 0);
  return {
    position: { x: position.x, y: position.y, z: position.z },
    spinDirection: anticlockwise ? "anticlockwise" : "clockwise",
    entangled: Boolean(view.entangled_flags[qubit]),
  };
}

/** Arrow only where a relative phase exists: off the poles, not entangled. */
export function hasSpinArrow(marker: SkaterMarker): boolean {
  const { x, y } = marker.position;
  return !marker.entangled && x * x + y * y > SPIN_EPS;
}

// Fixed axonometric camera: +z up, +y right, +x toward the viewer
// (down-left). Screen y grows downward.
export const CAMERA = { xRight: -0.5, xDown: 0.35 };

export interface ScreenPoint {
  x: number;
  y: number;
}

export function project(v: BlochVector, radius: number, cx: number, cy: number): ScreenPoint {
  return {
    x: cx + radius * (v.y + CAMERA.xRight * v.x),
    y: cy + radius * (CAMERA.xDown * v.x - v.z),
  };
}

const SVG_NS = "http://www.w3.org/2000/svg";
const SIZE = 230;
const RADIUS = 78;

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  return el;
}

function text(content: string, attrs: Record<string, string>): SVGTextElement {
  const el = svgEl("text", attrs);
  el.textContent = content;
  return el;
}

function axisLabels(cx: number, cy: number): SVGElement[] {
  const at = (v: BlochVector, label: string, dy: number) => {
    const p = project(v, RADIUS, cx, cy);
    return text(label, {
      x: String(p.x),
      y: String(p.y + dy),
      class: "axis-label",
      "text-anchor": "middle",
    });
  };
  return [
    at({ x: 0, y: 0, z: 1 }, "|0⟩", -8),
    at({ x: 0, y: 0, z: -1 }, "|1⟩", 16),
    at({ x: 1, y: 0, z: 0 }, "|+⟩", 16),
    at({ x: -1, y: 0, z: 0 }, "|−⟩", -8),
    at({ x: 0, y: 1, z: 0 }, "|i⟩", 4),
    at({ x: 0, y: -1, z: 0 }, "|−i⟩", 4),
  ];
}

function renderRink(view: StateView, qubit: number): SVGSVGElement {
  const cx = SIZE / 2;
  const cy = SIZE / 2;
  const svg = svgEl("svg", {
    width: String(SIZE),
    height: String(SIZE),
    viewBox: `0 0 ${SIZE} ${SIZE}`,
    class: "bloch-rink",
    "data-qubit": String(qubit),
  });

  svg.appendChild(svgEl("circle", { cx: String(cx), cy: String(cy), r: String(RADIUS), class: "rink-outline" }));
  svg.appendChild(
    svgEl("ellipse", {
      cx: String(cx),
      cy: String(cy),
      rx: String(RADIUS),
      ry: String(RADIUS * CAMERA.xDown),
      class: "rink-equator",
    }),
  );
  for (const label of axisLabels(cx, cy)) svg.appendChild(label);
  svg.appendChild(text(`q${qubit}`, { x: "10", y: "18", class: "qubit-tag" }));

  const marker = markerFor(view, qubit);
  const spot = marker.entangled
    ? project({ x: 0, y: 0, z: 0 }, RADIUS, cx, cy)
    : project(marker.position, RADIUS, cx, cy);

  const skater = svgEl("circle", {
    cx: String(spot.x),
    cy: String(spot.y),
    r: "7",
    class: marker.entangled ? "skater entangled" : "skater",
    "data-qubit": String(qubit),
    "data-x": String(marker.position.x),
    "data-y": String(marker.position.y),
    "data-z": String(marker.position.z),
    "data-spin": marker.spinDirection,
  });
  svg.appendChild(skater);

  if (hasSpinArrow(marker)) {
    const glyph = marker.spinDirection === "clockwise" ? "↻" : "↺";
    svg.appendChild(
      text(glyph, {
        x: String(spot.x + 11),
        y: String(spot.y - 8),
        class: `spin-arrow ${marker.spinDirection}`,
        "data-direction": marker.spinDirection,
      }),
    );
  }

  if (marker.entangled) {
    svg.appendChild(
      text("entangled", {
        x: String(spot.x),
        y: String(spot.y + 22),
        class: "entangled-badge",
        "text-anchor": "middle",
      }),
    );
  }

  return svg;
}

/**
 * Draw one rink per qubit of the view, markers placed by `project` from the
 * API Bloch vectors. Entangled qubits sit at the center with a badge. A null
 * view renders a placeholder.
 */
export function renderBlochView(container: HTMLElement, view: StateView | null): void {
  container.replaceChildren();
  if (!view || view.bloch.length === 0) {
    const placeholder = document.createElement("div");
    placeholder.className = "bloch-placeholder";
    placeholder.textContent = "no state to show yet";
    container.appendChild(placeholder);
    return;
  }
  for (let qubit = 0; qubit < view.num_qubits; qubit += 1) {
    container.appendChild(renderRink(view, qubit));
  }
  const legend = document.createElement("div");
  legend.className = "rink-legend";
  legend.textContent = "spin arrow: clockwise = positive relative phase";
  container.appendChild(legend);
}
