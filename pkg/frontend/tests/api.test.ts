import { afterEach, describe, expect, it } from "vitest";
import { vi } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { installFetch } from "./helpers.js";

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("api client", () => {
  it("joins a configured base url", async () => {
    const { calls } = installFetch(() => ({ body: { format_version: "1.0.0", model: { goals: [] } } }));
    await new ApiClient("http://device:9000/").getModel();
    expect(calls[0]!.url).toBe("http://device:9000/api/model");
    expect(calls[0]!.method).toBe("GET");
  });

  it("sends the ahp method only when one is picked", async () => {
    const { calls } = installFetch(() => ({
      body: { labels: ["1", "2"], weights: [0.5, 0.5], consistency: { lambda_max: 2, ci: 0, cr: 0, acceptable: true } },
    }));
    const api = new ApiClient();
    await api.priorities(["1", "2"], [[1, 1], [1, 1]]);
    await api.priorities(["1", "2"], [[1, 1], [1, 1]], "geometric");
    expect(calls[0]!.body).toEqual({ labels: ["1", "2"], entries: [[1, 1], [1, 1]] });
    expect((calls[1]!.body as { method: string }).method).toBe("geometric");
  });

  it("sends the concordance threshold only when one is given", async () => {
    const response = {
      rank_sums: [3, 3],
      mean_rank_sum: 3,
      s: 0,
      w: 0,
      good_agreement: false,
      consensus_order: ["x", "y"],
      consensus_ties: true,
    };
    const { calls } = installFetch(() => ({ body: response }));
    const api = new ApiClient();
    await api.concordance(["j1", "j2"], ["x", "y"], [[1, 2], [2, 1]]);
    await api.concordance(["j1", "j2"], ["x", "y"], [[1, 2], [2, 1]], 0.8);
    expect(calls[0]!.body).not.toHaveProperty("threshold");
    expect((calls[1]!.body as { threshold: number }).threshold).toBe(0.8);
  });

  it("turns a domain rejection into an ApiError with the rule code", async () => {
    installFetch(() => ({
      status: 422,
      body: { error: { code: "unknown-reference", message: "no goal named 'ghost'", goal: "ghost" } },
    }));
    const failure = await new ApiClient().runScenario("gateway").catch((error) => error);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.code).toBe("unknown-reference");
    expect(failure.status).toBe(422);
    expect(failure.message).toBe("no goal named 'ghost'");
  });

  it("keeps a generic code when the error body is not an envelope", async () => {
    vi.stubGlobal("fetch", async () => ({
      ok: false,
      status: 502,
      json: async () => {
        throw new Error("not json");
      },
    }) as unknown as Response);
    const failure = await new ApiClient().getModel().catch((error) => error);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.code).toBe("http");
    expect(failure.status).toBe(502);
  });

  it("escapes scenario names in the run path", async () => {
    const { calls } = installFetch(() => ({ body: { scenario: "a b", kind: "choose" } }));
    await new ApiClient().runScenario("a b");
    expect(calls[0]!.url).toBe("/api/scenario/a%20b/run");
  });
});
