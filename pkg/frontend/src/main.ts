/**
 * Browser bootstrap: wires the pure renderers to a live service with
 * plain event delegation.  Everything interesting happens in the
 * tested modules; this file only moves strings in and out of the DOM.
 */
import { ServiceClient, ServiceError, fetchTransport } from "./client.js";
import { Explorer } from "./explorer.js";
import {
  renderJusticePanel,
  renderPassionPanel,
  renderScenarioBrowser,
  renderWeightEditor,
} from "./render.js";
import { ScenarioListing, asJustice, asPassion } from "./schemas.js";
import { EditorState, editorFromSummary, setWeight, toggleLock } from "./weights.js";

const RANKING_PROCEDURES = [
  "admin_rank",
  "democratic_rank",
  "weighted_democracy",
  "leader_compromise",
];

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app container");
}
const serviceBase =
  new URLSearchParams(window.location.search).get("service") ?? window.location.origin;
const client = new ServiceClient(fetchTransport(serviceBase));
const explorer = new Explorer(client);

let listing: ScenarioListing = { scenarios: [] };
let editor: EditorState | null = null;
let justicePanel = "";
let passionPanel = "";
let showMatrix = false;
let notice = "";

function toolbar(): string {
  const buttons = RANKING_PROCEDURES.map(
    (name) =>
      `<button data-action="run-procedure" data-procedure="${name}">${name}</button>`,
  ).join("");
  return (
    '<div class="toolbar">' +
    buttons +
    '<button data-action="pin-baseline">Pin as baseline</button>' +
    '<button data-action="show-justice">Justice</button>' +
    '<button data-action="show-passion">Passion</button>' +
    '<label><input type="checkbox" data-action="toggle-matrix"' +
    (showMatrix ? " checked" : "") +
    "> heat table</label></div>"
  );
}

function render(): void {
  const pieces = [renderScenarioBrowser(listing, explorer.state.scenarioId ?? undefined)];
  if (notice) {
    pieces.push(`<p class="notice">${notice}</p>`);
  }
  if (explorer.state.summary) {
    pieces.push(toolbar());
  }
  pieces.push(explorer.renderMain());
  if (editor && !explorer.state.conflictMessage) {
    pieces.push(renderWeightEditor(editor));
  }
  if (!explorer.state.conflictMessage) {
    pieces.push(justicePanel, passionPanel);
  }
  root!.innerHTML = pieces.join("");
}

function report(error: unknown): void {
  notice =
    error instanceof ServiceError
      ? `${error.code}: ${error.message}`
      : String(error);
  render();
}

async function openScenario(id: string): Promise<void> {
  await explorer.open(id);
  editor = editorFromSummary(explorer.state.summary!, "admin_achievement");
  justicePanel = "";
  passionPanel = "";
  notice = "";
  await explorer.runRanking("admin_rank");
  explorer.pinBaseline();
  render();
}

async function refreshPassion(): Promise<void> {
  const id = explorer.state.scenarioId;
  if (!id) return;
  const envelope = await client.run(id, "passion");
  passionPanel = renderPassionPanel(asPassion(envelope.result), { showMatrix });
}

document.addEventListener("click", (event) => {
  const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
  if (!target) return;
  const action = target.dataset.action;
  void (async () => {
    try {
      if (action === "open-scenario" && target.dataset.id) {
        await openScenario(target.dataset.id);
      } else if (action === "run-procedure" && target.dataset.procedure) {
        await explorer.runRanking(target.dataset.procedure);
        render();
      } else if (action === "pin-baseline") {
        explorer.pinBaseline();
        render();
      } else if (action === "show-justice") {
        const id = explorer.state.scenarioId;
        if (id) {
          const envelope = await client.run(id, "justice");
          justicePanel = renderJusticePanel(asJustice(envelope.result));
          render();
        }
      } else if (action === "show-passion") {
        await refreshPassion();
        render();
      } else if (action === "apply-weights" && editor) {
        const applied = await explorer.applyWeights(editor);
        if (applied && explorer.state.summary) {
          editor = editorFromSummary(explorer.state.summary, "admin_achievement");
        }
        render();
      } else if (action === "reload-scenario") {
        await explorer.reload();
        if (explorer.state.summary) {
          editor = editorFromSummary(explorer.state.summary, "admin_achievement");
        }
        render();
      }
    } catch (error) {
      report(error);
    }
  })();
});

document.addEventListener("input", (event) => {
  const input = event.target as HTMLInputElement;
  if (input.dataset.action !== "set-weight" || !editor) return;
  const row = input.closest<HTMLElement>(".weight-row");
  if (!row) return;
  editor = setWeight(editor, Number(row.dataset.index), Number(input.value));
  render();
});

document.addEventListener("change", (event) => {
  const input = event.target as HTMLInputElement;
  if (input.dataset.action === "toggle-lock" && editor) {
    const row = input.closest<HTMLElement>(".weight-row");
    if (!row) return;
    editor = toggleLock(editor, Number(row.dataset.index));
    render();
  } else if (input.dataset.action === "toggle-matrix") {
    showMatrix = input.checked;
    void refreshPassion().then(render).catch(report);
  }
});

client
  .listScenarios()
  .then((result) => {
    listing = result;
    render();
  })
  .catch(report);
