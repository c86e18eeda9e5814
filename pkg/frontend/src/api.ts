/** Typed client for the igape workbench HTTP API.
 *
 * Every number shown anywhere in the UI originates from one of these
 * responses. The client performs no scoring of its own; it only moves
 * JSON back and forth and reports server-side failures as ApiError.
 */

export interface GoalData {
  id: string;
  name: string;
  kind: string;
  decomposition?: string;
  parent?: string;
  children?: string[];
  cluster?: string;
  description?: string;
  [key: string]: unknown;
}

export interface ContributionData {
  source: string;
  target: string;
  symbol?: string;
  metric?: string;
  value?: number;
}

export interface ClusterData {
  id: string;
  root: string;
  members: string[];
  quality_requirements: string[];
}

export interface ScenarioData {
  kind: string;
  cluster: string;
  alternatives: string[];
  hierarchy: string;
  goals?: string[];
  goal_weights?: number[];
  goal_judgments?: number[][];
  policy?: unknown;
}

export interface ModelData {
  name?: string;
  version?: string;
  goals: GoalData[];
  clusters?: ClusterData[];
  contributions?: ContributionData[];
  dependencies?: unknown[];
}

export interface DocumentData {
  format_version: string;
  name?: string;
  notes?: string[];
  model: ModelData;
  hierarchies?: Record<string, unknown>;
  scenarios?: Record<string, ScenarioData>;
}

export interface ValidationWarning {
  severity: string;
  rule: string;
  goal: string | null;
  message: string;
}

export interface ReplaceResult {
  replaced: boolean;
  warnings: ValidationWarning[];
}

export interface ConsistencyData {
  lambda_max: number;
  ci: number;
  cr: number;
  acceptable: boolean;
}

export interface PriorityData {
  labels: string[];
  weights: number[];
  consistency: ConsistencyData;
}

export interface TopsisData {
  normalized: number[][];
  weighted: number[][];
  ideal: number[];
  anti_ideal: number[];
  s_plus: number[];
  s_minus: number[];
  /** One entry per decision-matrix row, in the matrix's row order; the
   * matching identifiers travel in the decision-matrix trace step. */
  closeness: number[];
  ranking: string[];
  warnings: string[];
}

export interface TraceStep {
  step: string;
  summary: string;
  data: unknown;
}

export interface OutcomeData {
  scenario: string;
  goal: string;
  chosen: string[];
  rejected: string[];
  goal_priorities: Record<string, number>;
  warnings: string[];
  ranking: TopsisData;
  trace: TraceStep[];
}

export interface RunData {
  scenario: string;
  kind: string;
  outcome?: OutcomeData;
  per_goal?: Record<string, OutcomeData>;
}

export type EditData =
  | { kind: "identity" }
  | { kind: "contribution"; source: string; target: string; symbol?: string; metric?: string; value?: number }
  | { kind: "local-weights"; criterion: string; weights: number[] }
  | { kind: "judgment"; criterion: string; row: number; col: number; value: number };

export interface WhatIfData {
  baseline: RunData;
  edited: RunData;
  rank_moves: { alternative: string; before: number; after: number }[];
  closeness_deltas: Record<string, number>;
}

export interface SessionData {
  id: string;
  staged: { scenario: string; edit: EditData } | null;
  history: { scenario: string; edit: EditData }[];
}

export interface ConcordanceData {
  rank_sums: number[];
  mean_rank_sum: number;
  s: number;
  w: number;
  good_agreement: boolean;
  consensus_order: string[];
  consensus_ties: boolean;
}

/** A non-2xx response, carrying the error envelope's code and message. */
export class ApiError extends Error {
  readonly code: string;
  readonly status: number;
  readonly details: unknown;

  constructor(status: number, code: string, message: string, details?: unknown) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
    this.details = details;
  }
}

interface ErrorEnvelope {
  error?: { code?: string; message?: string; [key: string]: unknown };
}

async function unwrap<T>(response: Response): Promise<T> {
  if (response.ok) {
    return (await response.json()) as T;
  }
  let code = "http";
  let message = `request failed with status ${response.status}`;
  let details: unknown;
  try {
    const body = (await response.json()) as ErrorEnvelope;
    if (body.error) {
      code = body.error.code ?? code;
      message = body.error.message ?? message;
      details = body.error;
    }
  } catch {
    // Non-JSON body; keep the generic message.
  }
  throw new ApiError(response.status, code, message, details);
}

export class ApiClient {
  readonly base: string;

  constructor(base = "") {
    this.base = base.replace(/\/$/, "");
  }

  private async get<T>(path: string): Promise<T> {
    return unwrap<T>(await fetch(this.base + path));
  }

  private async send<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    return unwrap<T>(await fetch(this.base + path, init));
  }

  getModel(): Promise<DocumentData> {
    return this.get("/api/model");
  }

  replaceModel(document: DocumentData): Promise<ReplaceResult> {
    return this.send("PUT", "/api/model", document);
  }

  priorities(labels: string[], entries: number[][], method?: string): Promise<PriorityData> {
    const body: Record<string, unknown> = { labels, entries };
    if (method !== undefined) {
      body.method = method;
    }
    return this.send("POST", "/api/ahp/priorities", body);
  }

  runScenario(name: string): Promise<RunData> {
    return this.send("POST", `/api/scenario/${encodeURIComponent(name)}/run`);
  }

  whatIf(scenario: string, edit: EditData): Promise<WhatIfData> {
    return this.send("POST", "/api/whatif", { scenario, edit });
  }

  commitWhatIf(): Promise<{ committed: EditData; scenario: string }> {
    return this.send("POST", "/api/whatif/commit");
  }

  discardWhatIf(): Promise<{ discarded: boolean }> {
    return this.send("POST", "/api/whatif/discard");
  }

  session(): Promise<SessionData> {
    return this.get("/api/session");
  }

  concordance(
    judges: string[],
    alternatives: string[],
    ranks: number[][],
    threshold?: number,
  ): Promise<ConcordanceData> {
    const body: Record<string, unknown> = { judges, alternatives, ranks };
    if (threshold !== undefined) {
      body.threshold = threshold;
    }
    return this.send("POST", "/api/concordance", body);
  }
}
