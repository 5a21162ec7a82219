import { describe, expect, it } from "vitest";

import created from "../fixtures/session-created.json";
import afterFix from "../fixtures/session-after-fix.json";
import afterRejection from "../fixtures/session-after-rejection.json";
import rejected from "../fixtures/constraint-rejected.json";

import { SessionDoc } from "../src/api.js";
import { kappaToTau, tauToKappa } from "../src/convert.js";
import {
  applySession,
  cellFor,
  initialState,
  openPairLabels,
  recordRejected,
} from "../src/state.js";

const createdDoc = SessionDoc.parse(created);
const afterFixDoc = SessionDoc.parse(afterFix);

describe("conversions", () => {
  it("pair round trip", () => {
    expect(kappaToTau(0.799, 2)).toBeCloseTo(0.598, 12);
    expect(tauToKappa(0.598, 2)).toBeCloseTo(0.799, 12);
    expect(kappaToTau(tauToKappa(-0.3, 4), 4)).toBeCloseTo(-0.3, 12);
  });
});

describe("applySession", () => {
  it("builds fixed cells from constraints and open cells from bounds", () => {
    const state = applySession(initialState(), createdDoc);
    expect(state.sessionId).toBe(createdDoc.session_id);
    const fixed12 = cellFor(state, [1, 2]);
    expect(fixed12?.kind).toBe("fixed");
    expect(fixed12?.value).toBeCloseTo(2 * 0.639 - 1, 12);
    expect(fixed12?.provenance).toBe("estimated");
    const open14 = cellFor(state, [1, 4]);
    expect(open14?.kind).toBe("open");
    expect(open14!.lower!).toBeLessThanOrEqual(open14!.upper!);
    // with nothing known about asset 4, its pair values are unconstrained
    expect(open14?.lower).toBeCloseTo(-1, 9);
    expect(open14?.upper).toBeCloseTo(1, 9);
  });

  it("fixing (1,4) moves it to the fixed set and narrows nothing incorrectly", () => {
    const before = applySession(initialState(), createdDoc);
    const after = applySession(before, afterFixDoc);
    const fixed14 = cellFor(after, [1, 4]);
    expect(fixed14?.kind).toBe("fixed");
    expect(fixed14?.value).toBeCloseTo(0.598, 9);
    const stillOpen = openPairLabels(after);
    expect(stillOpen).toEqual([
      [2, 4],
      [3, 4],
    ]);
    // bound monotonicity: open intervals never widen when a value is fixed
    for (const label of stillOpen) {
      const wide = cellFor(before, label)!;
      const narrow = cellFor(after, label)!;
      expect(narrow.lower!).toBeGreaterThanOrEqual(wide.lower! - 1e-9);
      expect(narrow.upper!).toBeLessThanOrEqual(wide.upper! + 1e-9);
    }
  });
});

describe("rejected constraints", () => {
  it("leave the grid unchanged and are recorded in the history", () => {
    const state = applySession(initialState(), afterFixDoc);
    const detail = rejected.body.detail as { lower: number; upper: number };
    const after = recordRejected(
      state,
      rejected.request.label as number[],
      rejected.request.tau as number,
      rejected.body.message as string,
      detail,
    );
    expect(after.cells).toEqual(state.cells);
    expect(after.history).toHaveLength(state.history.length + 1);
    const entry = after.history[after.history.length - 1]!;
    expect(entry.accepted).toBe(false);
    expect(entry.violated?.upper).toBeCloseTo(detail.upper, 12);
  });

  it("server state after the 409 equals the pre-rejection state", () => {
    const afterRejectionDoc = SessionDoc.parse(afterRejection);
    const a = applySession(initialState(), afterFixDoc);
    const b = applySession(initialState(), afterRejectionDoc);
    expect(b.cells).toEqual(a.cells);
  });
});
