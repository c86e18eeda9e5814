import {
  ApiClient,
  ApiError,
  ContributionData,
  DocumentData,
  EditData,
  OutcomeData,
  WhatIfData,
} from "./api.js";
import { clear, el, errorBox, fmtDelta, fmtScore } from "./dom.js";
import { closenessByName, outcomesOf } from "./ranking.js";

/** What-if workbench.
 *
 * A single edit is staged against a scenario and previewed side by side with
 * the baseline run. Nothing touches the working model until the edit is
 * committed; discarding simply drops the staged edit on the server. The
 * preview numbers are the server's, shown verbatim.
 */

export interface WhatIfPanel {
  element: HTMLElement;
  prefill(link: ContributionData): void;
}

const SYMBOLS = ["++", "+", "o", "-", "--"];

export function createWhatIfPanel(
  api: ApiClient,
  doc: DocumentData,
  onCommitted?: () => void,
): WhatIfPanel {
  const names = Object.keys(doc.scenarios ?? {});
  const scenario = el("select", { "data-field": "scenario" });
  for (const name of names) {
    scenario.append(el("option", { value: name, text: name }));
  }

  const kind = el("select", { "data-field": "kind" });
  for (const value of ["contribution", "local-weights", "judgment", "identity"]) {
    kind.append(el("option", { value, text: value }));
  }

  const source = el("input", { type: "text", "data-field": "source" });
  const target = el("input", { type: "text", "data-field": "target" });
  const payloadKind = el("select", { "data-field": "payload-kind" },
                         el("option", { value: "symbol", text: "symbol" }),
                         el("option", { value: "metric", text: "metric" }));
  const symbol = el("select", { "data-field": "symbol" });
  for (const value of SYMBOLS) {
    symbol.append(el("option", { value, text: value }));
  }
  const metricName = el("input", { type: "text", "data-field": "metric" });
  const metricValue = el("input", { type: "text", "data-field": "value" });
  const criterion = el("input", { type: "text", "data-field": "criterion" });
  const weights = el("input", {
    type: "text",
    "data-field": "weights",
    placeholder: "comma separated, e.g. 0.5, 0.3, 0.2",
  });
  const row = el("input", { type: "text", "data-field": "row" });
  const col = el("input", { type: "text", "data-field": "col" });
  const judgmentValue = el("input", { type: "text", "data-field": "judgment-value" });

  const contributionFields = el("div", { class: "fields" },
                                field("source goal", source),
                                field("target requirement", target),
                                field("payload", payloadKind),
                                field("symbol", symbol),
                                field("metric", metricName),
                                field("value", metricValue));
  const criterionFields = el("div", { class: "fields" },
                             field("criterion", criterion));
  const weightsFields = el("div", { class: "fields" },
                           field("weights", weights));
  const judgmentFields = el("div", { class: "fields" },
                            field("row", row),
                            field("column", col),
                            field("judgment", judgmentValue));

  function field(label: string, control: HTMLElement): HTMLElement {
    return el("label", { class: "field" }, el("span", { text: label }), control);
  }

  function syncFields(): void {
    contributionFields.hidden = kind.value !== "contribution";
    criterionFields.hidden = kind.value !== "local-weights" && kind.value !== "judgment";
    weightsFields.hidden = kind.value !== "local-weights";
    judgmentFields.hidden = kind.value !== "judgment";
    const wantSymbol = payloadKind.value === "symbol";
    symbol.parentElement!.hidden = !wantSymbol;
    metricName.parentElement!.hidden = wantSymbol;
    metricValue.parentElement!.hidden = wantSymbol;
  }
  kind.addEventListener("change", syncFields);
  payloadKind.addEventListener("change", syncFields);

  const preview = el("button", { type: "button", "data-action": "preview", text: "Preview" });
  const commit = el("button", { type: "button", "data-action": "commit", text: "Commit" });
  const discard = el("button", { type: "button", "data-action": "discard", text: "Discard" });
  const note = el("p", { class: "field-note", "data-field": "note" });
  const baseline = el("div", { class: "column", "data-panel": "baseline", "data-numbers": "api" });
  const edited = el("div", { class: "column", "data-panel": "edited", "data-numbers": "api" });
  const deltas = el("div", { class: "deltas", "data-panel": "deltas", "data-numbers": "api" });

  let staged = false;
  let pending = false;

  function syncButtons(): void {
    preview.disabled = pending;
    commit.disabled = pending || !staged;
    discard.disabled = pending || !staged;
  }
  syncButtons();

  function buildEdit(): EditData | string {
    if (kind.value === "identity") {
      return { kind: "identity" };
    }
    if (kind.value === "contribution") {
      if (!source.value.trim() || !target.value.trim()) {
        return "a contribution edit needs both a source and a target";
      }
      if (payloadKind.value === "symbol") {
        return {
          kind: "contribution",
          source: source.value.trim(),
          target: target.value.trim(),
          symbol: symbol.value,
        };
      }
      const value = Number(metricValue.value.trim());
      if (metricValue.value.trim() === "" || !Number.isFinite(value)) {
        return "the metric value must be a number";
      }
      return {
        kind: "contribution",
        source: source.value.trim(),
        target: target.value.trim(),
        metric: metricName.value.trim(),
        value,
      };
    }
    if (kind.value === "local-weights") {
      const parts = weights.value.split(",").map((part) => Number(part.trim()));
      if (parts.length === 0 || parts.some((part) => !Number.isFinite(part))) {
        return "weights must be a comma separated list of numbers";
      }
      return { kind: "local-weights", criterion: criterion.value.trim(), weights: parts };
    }
    const r = Number(row.value.trim());
    const c = Number(col.value.trim());
    const v = Number(judgmentValue.value.trim());
    if (![r, c].every(Number.isInteger) || !Number.isFinite(v)) {
      return "row and column must be integers and the judgment a number";
    }
    return { kind: "judgment", criterion: criterion.value.trim(), row: r, col: c, value: v };
  }

  function renderColumn(container: HTMLElement, data: WhatIfData | null, which: "baseline" | "edited"): void {
    clear(container);
    if (data === null) {
      return;
    }
    const run = which === "baseline" ? data.baseline : data.edited;
    const moves = new Map(data.rank_moves.map((m) => [m.alternative, m]));
    container.append(el("h3", { text: which }));
    for (const [goal, outcome] of outcomesOf(run)) {
      container.append(compactRanking(outcome, goal, which === "edited" ? moves : undefined));
    }
  }

  function compactRanking(
    outcome: OutcomeData,
    goal: string | null,
    moves?: Map<string, { before: number; after: number }>,
  ): HTMLElement {
    const block = el("div", { class: "outcome" });
    if (goal) {
      block.append(el("h4", { text: goal }));
    }
    const closeness = closenessByName(outcome);
    const list = el("ol", { class: "ranking-list" });
    for (const name of outcome.ranking.ranking) {
      const score = closeness.get(name);
      const item = el("li", { "data-alternative": name },
                      el("span", { class: "label", text: name }),
                      el("span", { class: "value", text: score === undefined ? "" : fmtScore(score) }));
      const move = moves?.get(name);
      if (move) {
        const direction = move.after < move.before ? "up" : "down";
        item.append(el("span", {
          class: `move move-${direction}`,
          "data-move": name,
          text: `${direction === "up" ? "▲" : "▼"} was ${move.before}, now ${move.after}`,
        }));
      }
      list.append(item);
    }
    block.append(list);
    return block;
  }

  function renderDeltas(data: WhatIfData): void {
    clear(deltas);
    const entries = Object.entries(data.closeness_deltas);
    if (entries.length === 0) {
      return;
    }
    deltas.append(el("h3", { text: "Closeness shifts" }));
    const list = el("ul", {});
    for (const [name, delta] of entries) {
      list.append(el("li", { "data-delta": name },
                     el("span", { class: "label", text: name }),
                     el("span", { class: "value", text: fmtDelta(delta) })));
    }
    deltas.append(list);
  }

  async function guard(action: () => Promise<void>): Promise<void> {
    pending = true;
    syncButtons();
    note.textContent = "";
    try {
      await action();
    } catch (error) {
      if (error instanceof ApiError) {
        note.replaceChildren(errorBox(error.message, error.code));
      } else {
        note.replaceChildren(errorBox(String(error)));
      }
    } finally {
      pending = false;
      syncButtons();
    }
  }

  preview.addEventListener("click", () => {
    const edit = buildEdit();
    if (typeof edit === "string") {
      note.textContent = edit;
      return;
    }
    void guard(async () => {
      const data = await api.whatIf(scenario.value, edit);
      staged = true;
      renderColumn(baseline, data, "baseline");
      renderColumn(edited, data, "edited");
      renderDeltas(data);
    });
  });

  commit.addEventListener("click", () => {
    void guard(async () => {
      await api.commitWhatIf();
      staged = false;
      clear(edited);
      clear(deltas);
      note.textContent = "edit committed to the working model";
      onCommitted?.();
    });
  });

  discard.addEventListener("click", () => {
    void guard(async () => {
      await api.discardWhatIf();
      staged = false;
      clear(edited);
      clear(deltas);
      note.textContent = "staged edit discarded; the server model is unchanged";
    });
  });

  syncFields();

  const element = el("section", { class: "whatif-panel" },
                     el("div", { class: "controls" },
                        field("scenario", scenario),
                        field("edit kind", kind)),
                     contributionFields,
                     criterionFields,
                     weightsFields,
                     judgmentFields,
                     el("div", { class: "actions" }, preview, commit, discard),
                     note,
                     el("div", { class: "comparison" }, baseline, edited),
                     deltas);

  return {
    element,
    prefill(link: ContributionData): void {
      kind.value = "contribution";
      source.value = link.source;
      target.value = link.target;
      if (link.symbol !== undefined) {
        payloadKind.value = "symbol";
        symbol.value = link.symbol;
      } else {
        payloadKind.value = "metric";
        metricName.value = link.metric ?? "";
        metricValue.value = link.value === undefined ? "" : String(link.value);
      }
      syncFields();
    },
  };
}
