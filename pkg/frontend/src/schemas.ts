/**
 * Wire contracts for the scenario service.
 *
 * Every numeric leaf travels as a decimal string, never as a JSON
 * number; that keeps responses byte-stable and lets the panels show
 * exactly what the service computed.  The schemas reject numbers on
 * purpose so a service regression is caught at the boundary.
 */
import { z } from "zod";

export const decimal = z
  .string()
  .regex(/^-?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$/, "expected a decimal string");

export const errorBody = z.object({
  code: z.string(),
  message: z.string(),
  details: z.unknown(),
});
export type ErrorBody = z.infer<typeof errorBody>;

export const scenarioListing = z.object({
  scenarios: z.array(z.string()),
});
export type ScenarioListing = z.infer<typeof scenarioListing>;

export const scenarioSummary = z.object({
  id: z.string(),
  name: z.string(),
  revision: decimal,
  staff: z.array(z.string()),
  achievement_categories: z.array(z.string()),
  reward_categories: z.array(z.string()).nullish(),
  weights: z.object({
    admin_achievement: z.array(decimal),
    admin_reward: z.array(decimal).nullish(),
    personnel_achievement: z.record(z.array(decimal)),
    personnel_reward: z.record(z.array(decimal)).nullish(),
  }),
  config: z.record(z.string()),
});
export type ScenarioSummary = z.infer<typeof scenarioSummary>;

export const rankingEntry = z.object({
  position: decimal,
  staff_id: z.string(),
  score: decimal,
});
export type RankingEntry = z.infer<typeof rankingEntry>;

export const rankingDocument = z.object({
  kind: z.literal("ranking"),
  procedure: z.string(),
  tie_rule: z.string(),
  segmented: z.boolean(),
  share_scores: z.boolean(),
  entries: z.array(rankingEntry),
});
export type RankingDocument = z.infer<typeof rankingDocument>;

export const justiceDocument = z.object({
  kind: z.literal("justice"),
  pairs: z.array(
    z.object({
      achievement_list: z.string(),
      reward_list: z.string(),
      injustice: decimal,
      interpretation: z.string(),
    }),
  ),
  overall: decimal,
  overall_interpretation: z.string(),
  all_zero: z.boolean(),
});
export type JusticeDocument = z.infer<typeof justiceDocument>;

export const passionDocument = z.object({
  kind: z.literal("passion"),
  zero_policy: z.string(),
  average: z.array(z.object({ staff_id: z.string(), share: decimal })),
  matrix: z.object({
    kind: z.string(),
    staff: z.array(z.string()),
    rows: z.array(z.array(decimal)),
    normalized: z.boolean(),
    degenerate_rows: z.array(decimal),
  }),
  ranking: z.array(rankingEntry),
});
export type PassionDocument = z.infer<typeof passionDocument>;

const parameterEcho = z.record(
  z.union([z.string(), z.boolean(), z.array(z.string())]),
);

export const runEnvelope = z.object({
  id: z.string(),
  revision: decimal,
  procedure: z.string(),
  parameters: parameterEcho,
  result: z.unknown(),
});
export type RunEnvelope = z.infer<typeof runEnvelope>;

export const patchResponse = z.object({
  id: z.string(),
  revision: decimal,
});
export type PatchResponse = z.infer<typeof patchResponse>;

export const resultsListing = z.object({
  id: z.string(),
  revision: decimal,
  results: z.array(
    z.object({
      name: z.string(),
      procedure: z.string(),
      parameters: parameterEcho,
      revision: decimal,
      document: z.unknown(),
      stale: z.boolean(),
    }),
  ),
});
export type ResultsListing = z.infer<typeof resultsListing>;

export function asRanking(result: unknown): RankingDocument {
  return rankingDocument.parse(result);
}

export function asJustice(result: unknown): JusticeDocument {
  return justiceDocument.parse(result);
}

export function asPassion(result: unknown): PassionDocument {
  return passionDocument.parse(result);
}
