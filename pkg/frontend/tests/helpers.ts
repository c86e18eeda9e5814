import { vi } from "vitest";

/** Recorded request, with the JSON body already parsed. */
export interface RecordedCall {
  url: string;
  method: string;
  body: unknown;
}

export interface StubResponse {
  status?: number;
  body: unknown;
}

export type RouteHandler = (call: RecordedCall) => StubResponse;

/** Replace global fetch with a recording stub. The handler decides the
 * response per call; every request lands in the returned `calls` list. */
export function installFetch(handler: RouteHandler): { calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];
  vi.stubGlobal("fetch", async (input: RequestInfo | URL, init?: RequestInit) => {
    const call: RecordedCall = {
      url: String(input),
      method: init?.method ?? "GET",
      body: init?.body === undefined ? undefined : JSON.parse(String(init.body)),
    };
    calls.push(call);
    const result = handler(call);
    const status = result.status ?? 200;
    return {
      ok: status >= 200 && status < 300,
      status,
      json: async () => result.body,
    } as Response;
  });
  return { calls };
}

/** Let queued microtasks and zero-delay timers run. */
export async function flush(): Promise<void> {
  for (let i = 0; i < 3; i += 1) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}

export function setValue(input: HTMLInputElement | HTMLSelectElement, value: string): void {
  input.value = value;
  input.dispatchEvent(new Event("change", { bubbles: true }));
}

export function click(element: Element): void {
  (element as HTMLElement).dispatchEvent(new Event("click", { bubbles: true }));
}

export function text(root: ParentNode, selector: string): string {
  const node = root.querySelector(selector);
  if (!node) {
    throw new Error(`no element matches ${selector}`);
  }
  return node.textContent ?? "";
}

/** Consistency block that raises no flags, for responses where the test
 * only cares about the weights. */
export function cleanConsistency(lambdaMax: number): {
  lambda_max: number;
  ci: number;
  cr: number;
  acceptable: boolean;
} {
  return { lambda_max: lambdaMax, ci: 0, cr: 0, acceptable: true };
}

/** A choose-style run payload with the given closeness per alternative,
 * ranked best first. As in real responses, closeness travels as a list in
 * matrix row order (the declaration order of the record here) and the row
 * identifiers ride in the decision-matrix trace step. */
export function makeRun(
  scenario: string,
  closeness: Record<string, number>,
  chosen: string[],
  rejected: string[],
): {
  scenario: string;
  kind: string;
  outcome: {
    scenario: string;
    goal: string;
    chosen: string[];
    rejected: string[];
    goal_priorities: Record<string, number>;
    warnings: string[];
    ranking: {
      normalized: number[][];
      weighted: number[][];
      ideal: number[];
      anti_ideal: number[];
      s_plus: number[];
      s_minus: number[];
      closeness: number[];
      ranking: string[];
      warnings: string[];
    };
    trace: { step: string; summary: string; data: unknown }[];
  };
} {
  const order = Object.keys(closeness);
  const ranking = [...order].sort((a, b) => closeness[b]! - closeness[a]!);
  return {
    scenario,
    kind: "choose",
    outcome: {
      scenario,
      goal: "root",
      chosen,
      rejected,
      goal_priorities: {},
      warnings: [],
      ranking: {
        normalized: [],
        weighted: [],
        ideal: [],
        anti_ideal: [],
        s_plus: [],
        s_minus: [],
        closeness: order.map((name) => closeness[name]!),
        ranking,
        warnings: [],
      },
      trace: [
        {
          step: "decision-matrix",
          summary: `built a ${order.length}-row matrix`,
          data: { alternatives: order },
        },
      ],
    },
  };
}
