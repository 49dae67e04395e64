/**
 * Typed HTTP client for the scenario service.
 *
 * The transport is injectable so the contract tests can replay recorded
 * response bytes through the exact parse path the browser uses.
 */
import {
  ErrorBody,
  PatchResponse,
  ResultsListing,
  RunEnvelope,
  ScenarioListing,
  ScenarioSummary,
  errorBody,
  patchResponse,
  resultsListing,
  runEnvelope,
  scenarioListing,
  scenarioSummary,
} from "./schemas.js";

export interface HttpReply {
  status: number;
  text: string;
}

export type Transport = (
  method: string,
  path: string,
  body?: unknown,
) => Promise<HttpReply>;

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly details: unknown,
  ) {
    super(message);
    this.name = "ServiceError";
  }
}

/** The scenario moved on while the user was editing. */
export class RevisionConflictError extends ServiceError {
  constructor(status: number, body: ErrorBody) {
    super(status, body.code, body.message, body.details);
    this.name = "RevisionConflictError";
  }
}

export function fetchTransport(
  baseUrl: string,
  fetchImpl: typeof fetch = fetch,
): Transport {
  const root = baseUrl.replace(/\/+$/, "");
  return async (method, path, body) => {
    const response = await fetchImpl(root + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    return { status: response.status, text: await response.text() };
  };
}

function raise(reply: HttpReply): never {
  const parsed = errorBody.safeParse(JSON.parse(reply.text));
  if (!parsed.success) {
    throw new ServiceError(reply.status, "unexpected", reply.text, null);
  }
  if (reply.status === 409) {
    throw new RevisionConflictError(reply.status, parsed.data);
  }
  throw new ServiceError(
    reply.status,
    parsed.data.code,
    parsed.data.message,
    parsed.data.details,
  );
}

export interface RunOptions {
  parameters?: Record<string, string>;
  expectedRevision?: string;
  saveAs?: string;
}

export interface WeightPatch {
  target: "admin_achievement" | "admin_reward" | "person";
  staff_id?: string;
  channel?: "achievements" | "rewards";
  weights: string[];
  expected_revision?: string;
}

export class ServiceClient {
  constructor(private readonly transport: Transport) {}

  private async request<T>(
    method: string,
    path: string,
    body: unknown,
    parse: (value: unknown) => T,
    okStatus = 200,
  ): Promise<T> {
    const reply = await this.transport(method, path, body);
    if (reply.status !== okStatus) {
      raise(reply);
    }
    return parse(JSON.parse(reply.text));
  }

  listScenarios(): Promise<ScenarioListing> {
    return this.request("GET", "/scenarios", undefined, (v) => scenarioListing.parse(v));
  }

  createScenario(document: Record<string, unknown>, id?: string): Promise<ScenarioSummary> {
    const body = id === undefined ? document : { ...document, id };
    return this.request("POST", "/scenarios", body, (v) => scenarioSummary.parse(v), 201);
  }

  getSummary(id: string): Promise<ScenarioSummary> {
    return this.request("GET", `/scenarios/${id}`, undefined, (v) => scenarioSummary.parse(v));
  }

  patchWeights(id: string, patch: WeightPatch): Promise<PatchResponse> {
    return this.request("PATCH", `/scenarios/${id}/weights`, patch, (v) =>
      patchResponse.parse(v),
    );
  }

  run(id: string, procedure: string, options: RunOptions = {}): Promise<RunEnvelope> {
    const body: Record<string, unknown> = { procedure };
    if (options.parameters) body.parameters = options.parameters;
    if (options.expectedRevision) body.expected_revision = options.expectedRevision;
    if (options.saveAs) body.save_as = options.saveAs;
    return this.request("POST", `/scenarios/${id}/run`, body, (v) => runEnvelope.parse(v));
  }

  results(id: string): Promise<ResultsListing> {
    return this.request("GET", `/scenarios/${id}/results`, undefined, (v) =>
      resultsListing.parse(v),
    );
  }
}
