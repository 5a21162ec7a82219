/** View state: a pure function of the latest server session document.
 *
 * The grid shows every pairwise Kendall value either as fixed (elicited or
 * estimated) or as its current attainable interval; higher-order entries
 * ride along in the same structure.  Rejected elicitations are appended to
 * the history and never touch the grid.
 */

import type { BoundsDoc, SessionDoc } from "./api.js";
import { kappaToTau } from "./convert.js";

export interface GridCell {
  label: number[];
  kind: "fixed" | "open";
  /** tau units */
  value?: number;
  lower?: number;
  upper?: number;
  provenance?: string;
}

export interface HistoryEntry {
  label: number[];
  tau: number;
  accepted: boolean;
  reason?: string;
  violated?: { lower: number | null; upper: number | null };
}

export interface ViewState {
  sessionId: string | null;
  d: number;
  feasible: boolean;
  cells: GridCell[];
  history: HistoryEntry[];
}

export function initialState(): ViewState {
  return { sessionId: null, d: 0, feasible: true, cells: [], history: [] };
}

function key(label: readonly number[]): string {
  return label.join(",");
}

function boundsMap(bounds: BoundsDoc | null): Map<string, [number, number]> {
  const map = new Map<string, [number, number]>();
  if (!bounds) return map;
  bounds.targets.forEach((t, i) => {
    map.set(key(t), [bounds.lower[i]!, bounds.upper[i]!]);
  });
  return map;
}

/** Rebuild the grid from a fresh session document (the only mutation path). */
export function applySession(state: ViewState, doc: SessionDoc): ViewState {
  const fixed = new Map(doc.constraints.map((c) => [key(c.label), c]));
  const open = boundsMap(doc.bounds);
  const cells: GridCell[] = [];
  for (const label of doc.signature.labels) {
    if (label.length === 0) continue;
    const k = key(label);
    const constraint = fixed.get(k);
    if (constraint) {
      cells.push({
        label,
        kind: "fixed",
        value: kappaToTau(constraint.value, label.length),
        provenance: constraint.provenance,
      });
    }
  }
  for (const [k, [lo, hi]] of open) {
    const label = k.split(",").map(Number);
    cells.push({
      label,
      kind: "open",
      lower: kappaToTau(lo, label.length),
      upper: kappaToTau(hi, label.length),
    });
  }
  cells.sort((a, b) => a.label.length - b.label.length || key(a.label).localeCompare(key(b.label)));
  return {
    sessionId: doc.session_id,
    d: doc.d,
    feasible: doc.feasible,
    cells,
    history: state.history,
  };
}

export function recordAccepted(state: ViewState, label: number[], tau: number): ViewState {
  return {
    ...state,
    history: [...state.history, { label, tau, accepted: true }],
  };
}

/** A 409 from the server: keep the grid untouched, remember the verdict. */
export function recordRejected(
  state: ViewState,
  label: number[],
  tau: number,
  reason: string,
  violated?: { lower: number | null; upper: number | null },
): ViewState {
  return {
    ...state,
    history: [...state.history, { label, tau, accepted: false, reason, violated }],
  };
}

export function cellFor(state: ViewState, label: readonly number[]): GridCell | undefined {
  return state.cells.find((c) => key(c.label) === key(label));
}

export function openPairLabels(state: ViewState): number[][] {
  return state.cells.filter((c) => c.kind === "open" && c.label.length === 2).map((c) => c.label);
}
