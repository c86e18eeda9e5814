import { afterEach, describe, expect, it } from "vitest";
import { vi } from "vitest";

import { ApiClient, ConcordanceData } from "../src/api.js";
import { createConcordancePanel } from "../src/concordance.js";
import { click, flush, installFetch, setValue, text } from "./helpers.js";

afterEach(() => {
  vi.unstubAllGlobals();
  document.body.innerHTML = "";
});

/** The shipped expert-ranks dataset: the workbench's own ranking first,
 * then six expert rankings of the same four offers. */
const PANEL_ROWS: [string, number[]][] = [
  ["Our method", [1, 3, 2, 4]],
  ["Expert 1", [1, 2, 3, 4]],
  ["Expert 2", [2, 1, 3, 4]],
  ["Expert 3", [1, 3, 2, 4]],
  ["Expert 4", [2, 3, 1, 4]],
  ["Expert 5", [1, 3, 2, 4]],
  ["Expert 6", [1, 3, 2, 4]],
];

const PANEL_RESPONSE: ConcordanceData = {
  rank_sums: [9, 18, 15, 28],
  mean_rank_sum: 17.5,
  s: 189,
  w: 0.7714285714285715,
  good_agreement: true,
  consensus_order: ["A1", "A3", "A2", "A4"],
  consensus_ties: false,
};

function mountPanel(api: ApiClient): HTMLElement {
  const panel = createConcordancePanel(api, ["A1", "A2", "A3", "A4"]);
  document.body.append(panel);
  return panel;
}

function fillRow(panel: HTMLElement, index: number, judge: string, ranks: (number | string)[]): void {
  const row = panel.querySelector(`tr[data-row="${index}"]`)!;
  setValue(row.querySelector<HTMLInputElement>(".judge-name")!, judge);
  ranks.forEach((rank, col) => {
    setValue(row.querySelector<HTMLInputElement>(`input[data-col="${col}"]`)!, String(rank));
  });
}

function addRows(panel: HTMLElement, count: number): void {
  for (let i = 0; i < count; i += 1) {
    click(panel.querySelector('[data-action="add-row"]')!);
  }
}

describe("concordance panel", () => {
  it("shows the coefficient, rank sums and consensus from the response", async () => {
    const { calls } = installFetch(() => ({ body: PANEL_RESPONSE }));
    const panel = mountPanel(new ApiClient());
    addRows(panel, PANEL_ROWS.length - 2);
    PANEL_ROWS.forEach(([judge, ranks], index) => fillRow(panel, index, judge, ranks));
    await flush();

    expect(text(panel, '[data-field="w"]')).toBe("W = 0.771");
    expect(text(panel, ".badge-good")).toBe("good agreement");
    expect(text(panel, '[data-sum="A1"]')).toBe("9");
    expect(text(panel, '[data-sum="A2"]')).toBe("18");
    expect(text(panel, '[data-sum="A3"]')).toBe("15");
    expect(text(panel, '[data-sum="A4"]')).toBe("28");
    expect(text(panel, '[data-field="spread"]')).toContain("s = 189");
    expect(text(panel, '[data-field="consensus"]')).toBe("Consensus order: A1, A3, A2, A4");

    const body = calls.at(-1)!.body as { judges: string[]; alternatives: string[]; ranks: number[][] };
    expect(body.judges).toEqual(PANEL_ROWS.map(([judge]) => judge));
    expect(body.alternatives).toEqual(["A1", "A2", "A3", "A4"]);
    expect(body.ranks[0]).toEqual([1, 3, 2, 4]);
    expect(body.ranks).toHaveLength(7);
  });

  it("keeps incomplete rows out of the request", async () => {
    const { calls } = installFetch(() => ({ body: PANEL_RESPONSE }));
    const panel = mountPanel(new ApiClient());
    addRows(panel, PANEL_ROWS.length - 1);
    PANEL_ROWS.forEach(([judge, ranks], index) => fillRow(panel, index, judge, ranks));
    fillRow(panel, PANEL_ROWS.length, "Latecomer", [1, 2]);
    await flush();

    const body = calls.at(-1)!.body as { judges: string[] };
    expect(body.judges).toHaveLength(7);
    expect(body.judges).not.toContain("Latecomer");
  });

  it("flags a duplicate rank inline and excludes the row", async () => {
    const { calls } = installFetch(() => ({ body: PANEL_RESPONSE }));
    const panel = mountPanel(new ApiClient());
    addRows(panel, 1);
    fillRow(panel, 0, "Expert 1", [1, 2, 3, 4]);
    fillRow(panel, 1, "Expert 2", [2, 1, 3, 4]);
    fillRow(panel, 2, "Expert 3", [1, 1, 3, 4]);
    await flush();

    const flagged = panel.querySelector('tr[data-row="2"]')!;
    expect(flagged.classList.contains("invalid")).toBe(true);
    expect(text(panel, 'tr[data-row="2"] .row-status')).toBe("duplicate rank");
    const body = calls.at(-1)!.body as { judges: string[] };
    expect(body.judges).toEqual(["Expert 1", "Expert 2"]);
  });

  it("flags out-of-range ranks", async () => {
    installFetch(() => ({ body: PANEL_RESPONSE }));
    const panel = mountPanel(new ApiClient());
    fillRow(panel, 0, "Expert 1", [1, 2, 3, 9]);
    await flush();
    expect(text(panel, 'tr[data-row="0"] .row-status')).toContain("between 1 and 4");
  });

  it("asks for more input until two rows qualify", async () => {
    const { calls } = installFetch(() => ({ body: PANEL_RESPONSE }));
    const panel = mountPanel(new ApiClient());
    fillRow(panel, 0, "Expert 1", [1, 2, 3, 4]);
    await flush();

    expect(calls).toHaveLength(0);
    expect(text(panel, ".placeholder")).toContain("at least two complete rankings");
  });

  it("renders perfect agreement as W = 1.000", async () => {
    installFetch(() => ({
      body: {
        ...PANEL_RESPONSE,
        w: 1.0,
        rank_sums: [4, 8, 12, 16],
        s: 320,
        consensus_order: ["A1", "A2", "A3", "A4"],
      },
    }));
    const panel = mountPanel(new ApiClient());
    fillRow(panel, 0, "Expert 1", [1, 2, 3, 4]);
    fillRow(panel, 1, "Expert 2", [1, 2, 3, 4]);
    await flush();

    expect(text(panel, '[data-field="w"]')).toBe("W = 1.000");
  });

  it("hands a tied-input rejection through as an error box", async () => {
    installFetch(() => ({
      status: 422,
      body: { error: { code: "rank-validity", message: "judge 'Expert 1' assigned tied ranks" } },
    }));
    const panel = mountPanel(new ApiClient());
    fillRow(panel, 0, "Expert 1", [1, 2, 3, 4]);
    fillRow(panel, 1, "Expert 2", [4, 3, 2, 1]);
    await flush();

    expect(text(panel, ".error-box")).toContain("rank-validity");
  });
});
