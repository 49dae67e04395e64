/**
 * Weight editor model.
 *
 * A weight vector always sums to one, so moving one slider scales the
 * others proportionally.  Categories can be locked; locked values never
 * move, and the remaining freedom shrinks accordingly.  The editor can
 * only ever emit a patch the service will accept: emitPatch returns
 * null instead of an out-of-tolerance vector.
 */
import { ScenarioSummary } from "./schemas.js";
import { WeightPatch } from "./client.js";

export interface WeightSlider {
  name: string;
  value: number;
  locked: boolean;
}

export interface EditorState {
  target: "admin_achievement" | "admin_reward" | "person";
  staffId?: string;
  channel?: "achievements" | "rewards";
  revision: string;
  sliders: WeightSlider[];
}

const SUM_TOLERANCE = 1e-9;

export function editorFromSummary(
  summary: ScenarioSummary,
  target: EditorState["target"],
  staffId?: string,
  channel: "achievements" | "rewards" = "achievements",
): EditorState {
  let names: string[];
  let values: string[];
  if (target === "admin_achievement") {
    names = summary.achievement_categories;
    values = summary.weights.admin_achievement;
  } else if (target === "admin_reward") {
    if (!summary.reward_categories || !summary.weights.admin_reward) {
      throw new Error("scenario has no reward channel");
    }
    names = summary.reward_categories;
    values = summary.weights.admin_reward;
  } else {
    if (!staffId) {
      throw new Error("a person editor needs a staff id");
    }
    const table =
      channel === "achievements"
        ? summary.weights.personnel_achievement
        : summary.weights.personnel_reward;
    const row = table?.[staffId];
    if (!row) {
      throw new Error(`no ${channel} weights for ${staffId}`);
    }
    names =
      channel === "achievements"
        ? summary.achievement_categories
        : summary.reward_categories ?? [];
    values = row;
  }
  return {
    target,
    staffId,
    channel: target === "person" ? channel : undefined,
    revision: summary.revision,
    sliders: names.map((name, i) => ({
      name,
      value: Number(values[i]),
      locked: false,
    })),
  };
}

function lockedSum(sliders: WeightSlider[], except: number): number {
  return sliders.reduce(
    (acc, s, i) => (s.locked && i !== except ? acc + s.value : acc),
    0,
  );
}

/**
 * Move one slider and renormalize the unlocked rest proportionally.
 * Returns the state unchanged when the move is impossible: the slider
 * is locked, or every other category is locked.
 */
export function setWeight(state: EditorState, index: number, value: number): EditorState {
  const slider = state.sliders[index];
  if (!slider || slider.locked || !Number.isFinite(value)) {
    return state;
  }
  const others = state.sliders.filter((s, i) => i !== index && !s.locked);
  if (others.length === 0) {
    return state;
  }
  const fixed = lockedSum(state.sliders, index);
  const clamped = Math.min(Math.max(value, 0), Math.max(1 - fixed, 0));
  const remainder = 1 - fixed - clamped;
  const othersSum = others.reduce((acc, s) => acc + s.value, 0);
  const sliders = state.sliders.map((s, i) => {
    if (i === index) {
      return { ...s, value: clamped };
    }
    if (s.locked) {
      return s;
    }
    const share = othersSum > 0 ? s.value / othersSum : 1 / others.length;
    return { ...s, value: remainder * share };
  });
  return { ...state, sliders };
}

export function toggleLock(state: EditorState, index: number): EditorState {
  const slider = state.sliders[index];
  if (!slider) {
    return state;
  }
  const sliders = state.sliders.map((s, i) =>
    i === index ? { ...s, locked: !s.locked } : s,
  );
  return { ...state, sliders };
}

export function isValid(state: EditorState): boolean {
  let sum = 0;
  for (const slider of state.sliders) {
    if (!Number.isFinite(slider.value) || slider.value < -1e-12 || slider.value > 1 + 1e-12) {
      return false;
    }
    sum += slider.value;
  }
  return Math.abs(sum - 1) <= SUM_TOLERANCE;
}

function toDecimalString(x: number): string {
  const rounded = Math.round(x * 1e12) / 1e12;
  const plain = rounded.toString();
  if (!plain.includes("e") && !plain.includes("E")) {
    return plain;
  }
  const expanded = rounded.toFixed(12).replace(/0+$/, "").replace(/\.$/, "");
  return expanded === "" || expanded === "-" ? "0" : expanded;
}

/**
 * Turn the editor into a PATCH body, or null when the vector is not
 * submittable.  The last unlocked slider absorbs rounding so the
 * emitted strings sum to exactly one.
 */
export function emitPatch(state: EditorState): WeightPatch | null {
  if (!isValid(state)) {
    return null;
  }
  const residualIndex = state.sliders
    .map((s, i) => (s.locked ? -1 : i))
    .filter((i) => i >= 0)
    .pop();
  const anchor = residualIndex === undefined ? state.sliders.length - 1 : residualIndex;
  const weights = state.sliders.map((s) => toDecimalString(Math.max(s.value, 0)));
  const restSum = weights.reduce(
    (acc, w, i) => (i === anchor ? acc : acc + Number(w)),
    0,
  );
  const residual = 1 - restSum;
  if (residual < -SUM_TOLERANCE || residual > 1 + SUM_TOLERANCE) {
    return null;
  }
  weights[anchor] = toDecimalString(Math.max(residual, 0));
  const patch: WeightPatch = {
    target: state.target,
    weights,
    expected_revision: state.revision,
  };
  if (state.target === "person") {
    patch.staff_id = state.staffId;
    patch.channel = state.channel;
  }
  return patch;
}
