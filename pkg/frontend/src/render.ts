/**
 * Pure HTML-string renderers for the explorer panels.
 *
 * No DOM access here: every function maps parsed service data to a
 * string, which keeps the panels trivially testable against recorded
 * responses.  Raw decimal strings from the service always survive into
 * a title or data attribute so any displayed number can be traced
 * byte-for-byte back to the wire.
 */
import {
  JusticeDocument,
  PassionDocument,
  RankingDocument,
  RunEnvelope,
  ScenarioListing,
  ScenarioSummary,
} from "./schemas.js";
import { EditorState, emitPatch, isValid } from "./weights.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

/** "0.305034978848" -> "30.50%". */
export function pct(decimalString: string): string {
  return (Number(decimalString) * 100).toFixed(2) + "%";
}

export function renderScenarioBrowser(
  listing: ScenarioListing,
  selected?: string,
): string {
  const items = listing.scenarios
    .map((id) => {
      const cls = id === selected ? ' class="selected"' : "";
      return `<li${cls}><button data-action="open-scenario" data-id="${escapeHtml(id)}">${escapeHtml(id)}</button></li>`;
    })
    .join("");
  return (
    '<nav class="scenario-browser">' +
    `<ul>${items}</ul>` +
    '<form data-action="create-scenario">' +
    '<textarea name="document" placeholder="scenario document (JSON)"></textarea>' +
    '<input name="id" placeholder="scenario id">' +
    "<button>Create scenario</button>" +
    "</form></nav>"
  );
}

export function renderWeightEditor(state: EditorState): string {
  const rows = state.sliders
    .map((slider, i) => {
      const value = slider.value;
      const lockAttr = slider.locked ? " checked" : "";
      const disabled = slider.locked ? " disabled" : "";
      return (
        `<div class="weight-row" data-index="${i}">` +
        `<label>${escapeHtml(slider.name)}</label>` +
        `<input type="checkbox" data-action="toggle-lock" title="lock"${lockAttr}>` +
        `<input type="range" data-action="set-weight" min="0" max="1" step="0.001" value="${value.toFixed(3)}"${disabled}>` +
        `<span class="weight-value" title="${value}">${(value * 100).toFixed(1)}%</span>` +
        "</div>"
      );
    })
    .join("");
  const patch = emitPatch(state);
  const apply = patch
    ? '<button data-action="apply-weights">Apply and re-run</button>'
    : '<button data-action="apply-weights" disabled>Apply and re-run</button>';
  const subject =
    state.target === "person"
      ? `${state.staffId ?? "?"} (${state.channel ?? "achievements"})`
      : state.target.replace("_", " ");
  const validity = isValid(state)
    ? ""
    : '<p class="invalid">Weights must sum to 100%.</p>';
  return (
    `<section class="weight-editor" data-revision="${escapeHtml(state.revision)}">` +
    `<h3>Weights: ${escapeHtml(subject)}</h3>` +
    rows +
    validity +
    apply +
    "</section>"
  );
}

export function movementLabel(
  baselinePosition: number | undefined,
  position: number,
): string {
  if (baselinePosition === undefined) {
    return "new";
  }
  const diff = baselinePosition - position;
  if (diff > 0) return `↑${diff}`;
  if (diff < 0) return `↓${-diff}`;
  return "·";
}

function scoreCell(score: string, shares: boolean): string {
  const text = shares ? pct(score) : score;
  return `<td class="score" title="${score}">${text}</td>`;
}

/**
 * Positions for one procedure, with movement arrows against a pinned
 * baseline run when one is given.
 */
export function renderProcedurePanel(
  current: { envelope: RunEnvelope; document: RankingDocument },
  baseline?: { envelope: RunEnvelope; document: RankingDocument },
): string {
  const basePositions = new Map<string, number>();
  if (baseline) {
    for (const entry of baseline.document.entries) {
      basePositions.set(entry.staff_id, Number(entry.position));
    }
  }
  const rows = current.document.entries
    .map((entry) => {
      const movement = baseline
        ? `<td class="movement">${movementLabel(
            basePositions.get(entry.staff_id),
            Number(entry.position),
          )}</td>`
        : "";
      return (
        `<tr data-staff="${escapeHtml(entry.staff_id)}">` +
        `<td class="position">${entry.position}</td>` +
        `<td class="staff">${escapeHtml(entry.staff_id)}</td>` +
        scoreCell(entry.score, current.document.share_scores) +
        movement +
        "</tr>"
      );
    })
    .join("");
  const baselineNote = baseline
    ? `<p class="baseline-note">Baseline: ${escapeHtml(baseline.document.procedure)} at revision ${escapeHtml(baseline.envelope.revision)}</p>`
    : "";
  const header = baseline
    ? "<tr><th>#</th><th>Staff</th><th>Score</th><th>Move</th></tr>"
    : "<tr><th>#</th><th>Staff</th><th>Score</th></tr>";
  return (
    `<section class="procedure-panel" data-revision="${escapeHtml(current.envelope.revision)}">` +
    `<h3>${escapeHtml(current.document.procedure)}</h3>` +
    baselineNote +
    `<table>${header}${rows}</table>` +
    "</section>"
  );
}

export function renderJusticePanel(document: JusticeDocument): string {
  const rows = document.pairs
    .map(
      (pair) =>
        `<tr><td>${escapeHtml(pair.achievement_list)}</td>` +
        `<td>${escapeHtml(pair.reward_list)}</td>` +
        `<td class="injustice" title="${pair.injustice}">${pct(pair.injustice)}</td>` +
        `<td class="interpretation">${escapeHtml(pair.interpretation)}</td></tr>`,
    )
    .join("");
  const width = pct(document.overall);
  return (
    '<section class="justice-panel">' +
    "<h3>Justice</h3>" +
    "<table><tr><th>Achievement list</th><th>Reward list</th><th>Injustice</th><th>Reading</th></tr>" +
    rows +
    "</table>" +
    `<div class="gauge"><div class="gauge-fill" style="width:${width}"></div></div>` +
    `<p class="overall" data-value="${document.overall}">Overall injustice: ${width}</p>` +
    `<p class="overall-interpretation">${escapeHtml(document.overall_interpretation)}</p>` +
    "</section>"
  );
}

export function renderPassionPanel(
  document: PassionDocument,
  options: { showMatrix?: boolean } = {},
): string {
  const bars = document.average
    .map((entry) => {
      const width = pct(entry.share);
      return (
        `<div class="bar-row" data-staff="${escapeHtml(entry.staff_id)}">` +
        `<span class="bar-label">${escapeHtml(entry.staff_id)}</span>` +
        `<div class="bar" style="width:${width}" title="${entry.share}"></div>` +
        `<span class="bar-value">${width}</span>` +
        "</div>"
      );
    })
    .join("");
  let matrix = "";
  if (options.showMatrix) {
    const head = document.matrix.staff
      .map((id) => `<th>${escapeHtml(id)}</th>`)
      .join("");
    const body = document.matrix.rows
      .map((row, i) => {
        const cells = row
          .map((share) => {
            const alpha = Math.min(Math.max(Number(share), 0), 1).toFixed(3);
            return `<td class="heat" style="background:rgba(178,58,24,${alpha})" title="${share}">${pct(share)}</td>`;
          })
          .join("");
        return `<tr><th>${escapeHtml(document.matrix.staff[i] ?? "")}</th>${cells}</tr>`;
      })
      .join("");
    matrix = `<table class="heat-table"><tr><th></th>${head}</tr>${body}</table>`;
  }
  return (
    '<section class="passion-panel">' +
    "<h3>Work passion</h3>" +
    `<p class="zero-policy">Zero handling: ${escapeHtml(document.zero_policy)}</p>` +
    `<div class="bars">${bars}</div>` +
    matrix +
    "</section>"
  );
}

export function renderConflictPrompt(message: string): string {
  return (
    '<div class="conflict" role="alert">' +
    `<p>${escapeHtml(message)}</p>` +
    "<p>Someone changed this scenario while you were editing. Reload to pick up the latest weights; your unsaved slider changes will be dropped.</p>" +
    '<button data-action="reload-scenario">Reload scenario</button>' +
    "</div>"
  );
}

export function renderSummaryHeader(summary: ScenarioSummary): string {
  return (
    `<header class="scenario-header" data-revision="${escapeHtml(summary.revision)}">` +
    `<h2>${escapeHtml(summary.name)}</h2>` +
    `<p>${summary.staff.length} staff, revision ${escapeHtml(summary.revision)}</p>` +
    "</header>"
  );
}
