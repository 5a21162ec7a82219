/** Browser shell: wires the API client, view state and SVG panes together.
 *
 * Numerical decisions all come from the server; every grid change waits for
 * the server's verdict before anything is redrawn (no optimistic updates).
 */

import { ApiError, Client, RejectionDetail, SessionDoc } from "./api.js";
import { display, tauToKappa } from "./convert.js";
import { hullContains, project3D } from "./geometry.js";
import { buildRegion2D, cellView, pathFrom, probeStatus, viewportTransform } from "./render.js";
import {
  ViewState,
  applySession,
  initialState,
  openPairLabels,
  recordAccepted,
  recordRejected,
} from "./state.js";

const SERVICE = (window as unknown as { CONCORD_URL?: string }).CONCORD_URL ?? "http://127.0.0.1:8777";
const client = new Client(SERVICE);

// the seeded workflow: three observed series with estimated pairwise values,
// a fourth asset to elicit
const SEED_CONSTRAINTS = [
  { label: [1, 2], value: 0.639, provenance: "estimated" },
  { label: [1, 3], value: 0.666, provenance: "estimated" },
  { label: [2, 3], value: 0.681, provenance: "estimated" },
];

let state: ViewState = initialState();
let lastDoc: SessionDoc | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function renderGrid(): void {
  const grid = el<HTMLDivElement>("grid");
  grid.replaceChildren();
  for (const cell of state.cells) {
    const view = cellView(cell);
    const div = document.createElement("div");
    div.className = view.cssClass;
    div.title = view.title;
    div.textContent = `τ(${view.id}) = ${view.text}`;
    grid.appendChild(div);
  }
  el<HTMLDivElement>("status").textContent = state.feasible
    ? "session feasible"
    : "session infeasible";
}

function renderHistory(): void {
  const list = el<HTMLUListElement>("history");
  list.replaceChildren();
  for (const entry of [...state.history].reverse()) {
    const item = document.createElement("li");
    const verdict = entry.accepted ? "accepted" : `rejected (${entry.reason ?? "infeasible"})`;
    let text = `τ(${entry.label.join(",")}) = ${display(entry.tau)} · ${verdict}`;
    if (!entry.accepted && entry.violated && entry.violated.lower != null && entry.violated.upper != null) {
      const lo = display(2 * entry.violated.lower - 1);
      const hi = display(2 * entry.violated.upper - 1);
      text += ` · attainable interval [${lo}, ${hi}]`;
    }
    item.textContent = text;
    item.className = entry.accepted ? "ok" : "rejected";
    list.appendChild(item);
  }
}

let orbit = { yaw: 0.6, pitch: 0.4 };
let cloud3: Array<readonly [number, number, number]> = [];

function drawRegion(
  pane: SVGSVGElement,
  projection: readonly (readonly [number, number])[],
  pointCloudOnly: boolean,
): ReturnType<typeof buildRegion2D> {
  const region = buildRegion2D(projection);
  const toScreen = viewportTransform(region.box, 420, 420);
  const svgNs = "http://www.w3.org/2000/svg";
  if (!pointCloudOnly && !region.pointCloudOnly && region.hull.length >= 2) {
    const path = document.createElementNS(svgNs, "path");
    path.setAttribute("d", pathFrom(region.hull.map(toScreen)));
    path.setAttribute("class", "region");
    pane.appendChild(path);
  }
  for (const p of projection) {
    const dot = document.createElementNS(svgNs, "circle");
    const [cx, cy] = toScreen(p);
    dot.setAttribute("cx", String(cx));
    dot.setAttribute("cy", String(cy));
    dot.setAttribute("r", "3");
    dot.setAttribute("class", "vertex");
    pane.appendChild(dot);
  }
  return region;
}

async function renderProjection(): Promise<void> {
  const pane = el<SVGSVGElement & HTMLElement>("projection");
  pane.replaceChildren();
  if (!lastDoc) return;
  const open = openPairLabels(state);
  const targets = open.slice(0, 3);
  if (targets.length === 0) {
    el<HTMLDivElement>("projection-label").textContent =
      "session fully determined; nothing left to project";
    return;
  }
  const polytope = await client.vertices(lastDoc.signature, targets);
  const projection = (polytope.projection ?? []).map((p) => p.map((x) => 2 * x - 1));
  const names = targets.map((t) => `τ(${t.join(",")})`).join(", ");

  if (targets.length === 3) {
    // rotatable silhouette of the 3-D vertex cloud (drag to orbit)
    cloud3 = projection.map((p) => [p[0]!, p[1]!, p[2]!] as const);
    drawOrbit(pane);
    el<HTMLDivElement>("projection-label").textContent =
      `attainable (${names}) · ${polytope.vertices.length} vertices, drag to rotate`;
    return;
  }

  const planar =
    targets.length === 2
      ? projection.map((p) => [p[0]!, p[1]!] as const)
      : projection.map((p) => [p[0]!, 0] as const); // single target: a segment
  const region = drawRegion(pane, planar, false);
  el<HTMLDivElement>("projection-label").textContent =
    `attainable (${names}) · ${polytope.vertices.length} vertices` +
    (targets.length === 2 ? `, area ${region.area.toFixed(4)}` : "");
  if (targets.length < 2) return;
  pane.addEventListener("mousemove", (event) => {
    const rect = pane.getBoundingClientRect();
    const sx = event.clientX - rect.left;
    const sy = event.clientY - rect.top;
    // invert the viewport transform for the probe readout
    const spanX = Math.max(region.box.max[0]! - region.box.min[0]!, 1e-9);
    const spanY = Math.max(region.box.max[1]! - region.box.min[1]!, 1e-9);
    const x = region.box.min[0]! + ((sx - 12) / (420 - 24)) * spanX;
    const y = region.box.min[1]! + ((420 - 12 - sy) / (420 - 24)) * spanY;
    const status = probeStatus(region, [x, y]);
    const inHull = hullContains(planar, [x, y], 1e-7);
    el<HTMLDivElement>("probe").textContent =
      `probe τ = (${display(x)}, ${display(y)}) · ` +
      `${status.inside && inHull ? "attainable" : "outside"}`;
  });
}

function drawOrbit(pane: SVGSVGElement): void {
  pane.replaceChildren();
  drawRegion(pane, project3D(cloud3, orbit.yaw, orbit.pitch), false);
  el<HTMLDivElement>("probe").textContent =
    "silhouette of the 3-D attainable polytope; fix a value to cut a planar section";
}

let dragging = false;
let dragFrom = { x: 0, y: 0 };

function wireOrbitControls(pane: SVGSVGElement): void {
  pane.addEventListener("mousedown", (event) => {
    dragging = true;
    dragFrom = { x: event.clientX, y: event.clientY };
  });
  window.addEventListener("mouseup", () => {
    dragging = false;
  });
  pane.addEventListener("mousemove", (event) => {
    if (!dragging || cloud3.length === 0) return;
    orbit = {
      yaw: orbit.yaw + (event.clientX - dragFrom.x) * 0.01,
      pitch: orbit.pitch + (event.clientY - dragFrom.y) * 0.01,
    };
    dragFrom = { x: event.clientX, y: event.clientY };
    drawOrbit(pane);
  });
}

async function refresh(doc: SessionDoc): Promise<void> {
  lastDoc = doc;
  state = applySession(state, doc);
  renderGrid();
  renderHistory();
  await renderProjection();
}

async function boot(): Promise<void> {
  const doc = await client.createSession(4, SEED_CONSTRAINTS);
  await refresh(doc);
}

async function onFix(): Promise<void> {
  if (!lastDoc) return;
  const labelText = el<HTMLInputElement>("fix-label").value.trim();
  const tau = Number(el<HTMLInputElement>("fix-value").value);
  const label = labelText.split(",").map((x) => Number(x.trim()));
  try {
    const doc = await client.fixTau(lastDoc.session_id, label, tau);
    state = recordAccepted(state, label, tau);
    await refresh(doc);
  } catch (err) {
    if (err instanceof ApiError && err.status === 409) {
      const detail = RejectionDetail.safeParse(err.payload.detail);
      state = recordRejected(
        state,
        label,
        tau,
        err.payload.message,
        detail.success ? detail.data : undefined,
      );
      renderHistory(); // grid intentionally untouched
      return;
    }
    el<HTMLDivElement>("status").textContent = `error: ${(err as Error).message}`;
  }
}

async function onClear(): Promise<void> {
  if (!lastDoc) return;
  const labelText = el<HTMLInputElement>("fix-label").value.trim();
  const label = labelText.split(",").map((x) => Number(x.trim()));
  const doc = await client.clearConstraint(lastDoc.session_id, label);
  await refresh(doc);
}

window.addEventListener("DOMContentLoaded", () => {
  el<HTMLButtonElement>("fix-button").addEventListener("click", () => void onFix());
  el<HTMLButtonElement>("clear-button").addEventListener("click", () => void onClear());
  wireOrbitControls(el<SVGSVGElement & HTMLElement>("projection"));
  void boot();
});
