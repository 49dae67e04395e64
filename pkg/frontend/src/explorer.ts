/**
 * Explorer state machine.
 *
 * Holds the open scenario, a pinned baseline run, and the current run,
 * and funnels weight edits through the conditional-patch flow: every
 * patch carries the revision the editor was built from, and a 409 from
 * the service flips the state into a conflict that only an explicit
 * reload clears.
 */
import { RevisionConflictError, ServiceClient } from "./client.js";
import {
  RankingDocument,
  RunEnvelope,
  ScenarioSummary,
  asRanking,
} from "./schemas.js";
import {
  renderConflictPrompt,
  renderProcedurePanel,
  renderSummaryHeader,
} from "./render.js";
import { EditorState, emitPatch } from "./weights.js";

export interface RankedRun {
  envelope: RunEnvelope;
  document: RankingDocument;
}

export interface ExplorerState {
  scenarioId: string | null;
  summary: ScenarioSummary | null;
  baseline: RankedRun | null;
  current: RankedRun | null;
  conflictMessage: string | null;
}

export class Explorer {
  readonly state: ExplorerState = {
    scenarioId: null,
    summary: null,
    baseline: null,
    current: null,
    conflictMessage: null,
  };

  constructor(private readonly client: ServiceClient) {}

  async open(scenarioId: string): Promise<void> {
    const summary = await this.client.getSummary(scenarioId);
    this.state.scenarioId = scenarioId;
    this.state.summary = summary;
    this.state.baseline = null;
    this.state.current = null;
    this.state.conflictMessage = null;
  }

  private requireScenario(): string {
    if (!this.state.scenarioId) {
      throw new Error("no scenario is open");
    }
    return this.state.scenarioId;
  }

  async runRanking(procedure: string, parameters?: Record<string, string>): Promise<RankedRun> {
    const id = this.requireScenario();
    const envelope = await this.client.run(id, procedure, { parameters });
    const run = { envelope, document: asRanking(envelope.result) };
    this.state.current = run;
    return run;
  }

  /** Freeze the current run as the comparison point for later runs. */
  pinBaseline(): void {
    if (!this.state.current) {
      throw new Error("run a procedure before pinning it");
    }
    this.state.baseline = this.state.current;
  }

  /**
   * Apply the editor through a conditional patch, then re-run the
   * current procedure against the new revision.  Returns false when
   * the scenario had moved on and the conflict prompt is now showing.
   */
  async applyWeights(editor: EditorState): Promise<boolean> {
    const id = this.requireScenario();
    const patch = emitPatch(editor);
    if (!patch) {
      throw new Error("the editor holds an invalid weight vector");
    }
    try {
      await this.client.patchWeights(id, patch);
    } catch (error) {
      if (error instanceof RevisionConflictError) {
        this.state.conflictMessage = error.message;
        return false;
      }
      throw error;
    }
    this.state.summary = await this.client.getSummary(id);
    if (this.state.current) {
      await this.runRanking(
        this.state.current.envelope.procedure,
        parametersOf(this.state.current.envelope),
      );
    }
    return true;
  }

  /** Leave the conflict state by re-reading the scenario. */
  async reload(): Promise<void> {
    const id = this.requireScenario();
    const current = this.state.current;
    await this.open(id);
    if (current) {
      await this.runRanking(current.envelope.procedure, parametersOf(current.envelope));
    }
  }

  renderMain(): string {
    if (this.state.conflictMessage) {
      return renderConflictPrompt(this.state.conflictMessage);
    }
    const parts: string[] = [];
    if (this.state.summary) {
      parts.push(renderSummaryHeader(this.state.summary));
    }
    if (this.state.current) {
      parts.push(
        renderProcedurePanel(this.state.current, this.state.baseline ?? undefined),
      );
    }
    return parts.join("");
  }
}

function parametersOf(envelope: RunEnvelope): Record<string, string> | undefined {
  const entries = Object.entries(envelope.parameters).filter(
    (pair): pair is [string, string] => typeof pair[1] === "string",
  );
  return entries.length ? Object.fromEntries(entries) : undefined;
}
