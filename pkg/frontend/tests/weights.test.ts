import { describe, expect, it } from "vitest";

import { scenarioSummary } from "../src/schemas.js";
import {
  EditorState,
  editorFromSummary,
  emitPatch,
  isValid,
  setWeight,
  toggleLock,
} from "../src/weights.js";
import { fixtureJson } from "./helpers.js";

const summary = scenarioSummary.parse(fixtureJson("scenario_summary.json"));

function values(state: EditorState): number[] {
  return state.sliders.map((s) => s.value);
}

function sum(state: EditorState): number {
  return values(state).reduce((a, b) => a + b, 0);
}

describe("editorFromSummary", () => {
  it("loads the administrative vector", () => {
    const editor = editorFromSummary(summary, "admin_achievement");
    expect(values(editor)).toEqual([0.38, 0.22, 0.12, 0.28]);
    expect(editor.revision).toBe(summary.revision);
    expect(isValid(editor)).toBe(true);
  });

  it("loads one person's row", () => {
    const editor = editorFromSummary(summary, "person", "Age");
    expect(sum(editor)).toBeCloseTo(1, 12);
    expect(editor.staffId).toBe("Age");
    expect(editor.channel).toBe("achievements");
  });

  it("refuses a person editor without a staff id", () => {
    expect(() => editorFromSummary(summary, "person")).toThrow("staff id");
  });
});

describe("setWeight", () => {
  it("renormalizes the others proportionally", () => {
    const editor = editorFromSummary(summary, "admin_achievement");
    const moved = setWeight(editor, 0, 0.5);
    expect(moved.sliders[0]?.value).toBeCloseTo(0.5, 12);
    // the rest keep their 0.22 : 0.12 : 0.28 proportions inside 0.5
    expect(moved.sliders[1]?.value).toBeCloseTo((0.22 / 0.62) * 0.5, 12);
    expect(moved.sliders[2]?.value).toBeCloseTo((0.12 / 0.62) * 0.5, 12);
    expect(moved.sliders[3]?.value).toBeCloseTo((0.28 / 0.62) * 0.5, 12);
    expect(sum(moved)).toBeCloseTo(1, 12);
  });

  it("keeps locked categories fixed", () => {
    let editor = editorFromSummary(summary, "admin_achievement");
    editor = toggleLock(editor, 1);
    const moved = setWeight(editor, 0, 0.6);
    expect(moved.sliders[1]?.value).toBe(0.22);
    expect(moved.sliders[0]?.value).toBeCloseTo(0.6, 12);
    expect(sum(moved)).toBeCloseTo(1, 12);
  });

  it("clamps against the locked budget", () => {
    let editor = editorFromSummary(summary, "admin_achievement");
    editor = toggleLock(editor, 1); // 0.22 is spoken for
    const moved = setWeight(editor, 0, 0.95);
    expect(moved.sliders[0]?.value).toBeCloseTo(0.78, 12);
    expect(moved.sliders[2]?.value).toBeCloseTo(0, 12);
    expect(moved.sliders[3]?.value).toBeCloseTo(0, 12);
    expect(sum(moved)).toBeCloseTo(1, 12);
  });

  it("is a no-op when every other slider is locked", () => {
    let editor = editorFromSummary(summary, "admin_achievement");
    for (const i of [1, 2, 3]) {
      editor = toggleLock(editor, i);
    }
    expect(setWeight(editor, 0, 0.9)).toBe(editor);
  });

  it("is a no-op on a locked slider or junk input", () => {
    let editor = editorFromSummary(summary, "admin_achievement");
    editor = toggleLock(editor, 0);
    expect(setWeight(editor, 0, 0.9)).toBe(editor);
    editor = toggleLock(editor, 0);
    expect(setWeight(editor, 0, Number.NaN)).toBe(editor);
    expect(setWeight(editor, 99, 0.5)).toBe(editor);
  });

  it("recovers when the other sliders sit at zero", () => {
    let editor = editorFromSummary(summary, "admin_achievement");
    editor = setWeight(editor, 0, 1); // squeezes the rest to zero
    const reopened = setWeight(editor, 0, 0.4);
    expect(sum(reopened)).toBeCloseTo(1, 12);
    expect(reopened.sliders[1]?.value).toBeCloseTo(0.2, 12);
    expect(reopened.sliders[2]?.value).toBeCloseTo(0.2, 12);
    expect(reopened.sliders[3]?.value).toBeCloseTo(0.2, 12);
  });
});

describe("emitPatch", () => {
  it("emits strings that sum to exactly one", () => {
    let editor = editorFromSummary(summary, "admin_achievement");
    editor = setWeight(editor, 0, 1 / 3);
    const patch = emitPatch(editor);
    expect(patch).not.toBeNull();
    const total = patch!.weights.reduce((acc, w) => acc + Number(w), 0);
    expect(total).toBe(1);
    expect(patch!.target).toBe("admin_achievement");
    expect(patch!.expected_revision).toBe("1");
  });

  it("carries staff id and channel for a person patch", () => {
    const editor = editorFromSummary(summary, "person", "Age", "achievements");
    const patch = emitPatch(editor);
    expect(patch?.staff_id).toBe("Age");
    expect(patch?.channel).toBe("achievements");
  });

  it("refuses an invalid vector instead of emitting it", () => {
    const editor = editorFromSummary(summary, "admin_achievement");
    const broken: EditorState = {
      ...editor,
      sliders: editor.sliders.map((s, i) =>
        i === 0 ? { ...s, value: 0.9 } : s,
      ),
    };
    expect(isValid(broken)).toBe(false);
    expect(emitPatch(broken)).toBeNull();
  });

  it("never drifts out of tolerance over many random moves", () => {
    let editor = editorFromSummary(summary, "admin_achievement");
    let seed = 123456789;
    const next = () => {
      seed = (seed * 1103515245 + 12345) % 2147483648;
      return seed / 2147483648;
    };
    for (let step = 0; step < 500; step += 1) {
      const index = Math.floor(next() * 4);
      const action = next();
      if (action < 0.2) {
        editor = toggleLock(editor, index);
      } else {
        editor = setWeight(editor, index, next());
      }
      const patch = emitPatch(editor);
      if (patch) {
        const total = patch.weights.reduce((acc, w) => acc + Number(w), 0);
        expect(Math.abs(total - 1)).toBeLessThanOrEqual(1e-9);
        for (const w of patch.weights) {
          expect(Number(w)).toBeGreaterThanOrEqual(0);
        }
      }
    }
  });
});
