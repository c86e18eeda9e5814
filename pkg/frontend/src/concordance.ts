import { ApiClient, ApiError } from "./api.js";
import { clear, el, errorBox, fmtScore, fmtW } from "./dom.js";

/** Rank agreement panel.
 *
 * Judges' rankings are typed into a grid, one row per judge. A row takes
 * part in the computation only once it holds a judge name and a complete
 * permutation of 1..N; incomplete rows wait quietly and rows with repeated
 * or out-of-range ranks are flagged and left out. Whenever at least two rows
 * qualify the grid is sent to the server, and the coefficient, rank sums and
 * consensus order shown below all come from that response.
 */

interface Row {
  element: HTMLTableRowElement;
  judge: HTMLInputElement;
  cells: HTMLInputElement[];
  status: HTMLElement;
}

export function createConcordancePanel(api: ApiClient, alternatives: string[]): HTMLElement {
  const labels = alternatives.map((name) => {
    const input = el("input", { type: "text", value: name, class: "alt-label" });
    input.addEventListener("change", () => void refresh());
    return input;
  });
  const rows: Row[] = [];
  const body = el("tbody", {});
  const readout = el("div", { class: "results", "data-numbers": "api" });
  let sequence = 0;

  const table = el("table", { class: "rank-grid" });
  const head = el("tr", {}, el("th", { text: "judge" }));
  for (const input of labels) {
    const th = el("th", {});
    th.append(input);
    head.append(th);
  }
  head.append(el("th", {}));
  table.append(el("thead", {}, head), body);

  function addRow(): Row {
    const judge = el("input", { type: "text", class: "judge-name", placeholder: "judge" });
    const cells = alternatives.map((_, index) =>
      el("input", { type: "text", class: "rank-cell", "data-col": String(index) }));
    const status = el("td", { class: "row-status" });
    const element = el("tr", { "data-row": String(rows.length) });
    const judgeCell = el("td", {});
    judgeCell.append(judge);
    element.append(judgeCell);
    for (const cell of cells) {
      const td = el("td", {});
      td.append(cell);
      element.append(td);
    }
    element.append(status);
    for (const input of [judge, ...cells]) {
      input.addEventListener("change", () => void refresh());
    }
    const row = { element, judge, cells, status };
    rows.push(row);
    body.append(element);
    return row;
  }

  /** Classify a row: null means "not ready", a string is a visible problem,
   * and an array is a usable permutation. */
  function readRow(row: Row): number[] | string | null {
    const texts = row.cells.map((cell) => cell.value.trim());
    if (row.judge.value.trim() === "" || texts.some((t) => t === "")) {
      return null;
    }
    const ranks = texts.map((t) => Number(t));
    if (ranks.some((r) => !Number.isInteger(r))) {
      return "ranks must be whole numbers";
    }
    const n = alternatives.length;
    if (ranks.some((r) => r < 1 || r > n)) {
      return `ranks must fall between 1 and ${n}`;
    }
    if (new Set(ranks).size !== n) {
      return "duplicate rank";
    }
    return ranks;
  }

  async function refresh(): Promise<void> {
    const judges: string[] = [];
    const matrix: number[][] = [];
    for (const row of rows) {
      const outcome = readRow(row);
      if (Array.isArray(outcome)) {
        row.element.classList.remove("invalid");
        row.status.textContent = "";
        judges.push(row.judge.value.trim());
        matrix.push(outcome);
      } else if (typeof outcome === "string") {
        row.element.classList.add("invalid");
        row.status.textContent = outcome;
      } else {
        row.element.classList.remove("invalid");
        row.status.textContent = "";
      }
    }
    sequence += 1;
    const ticket = sequence;
    if (judges.length < 2) {
      clear(readout);
      readout.append(el("p", { class: "placeholder", text: "enter at least two complete rankings" }));
      return;
    }
    try {
      const names = labels.map((input) => input.value.trim());
      const data = await api.concordance(judges, names, matrix);
      if (ticket !== sequence) {
        return;
      }
      clear(readout);
      const headline = el("p", { class: "headline" },
                          el("span", { "data-field": "w", text: `W = ${fmtW(data.w)}` }),
                          data.good_agreement
                            ? el("span", { class: "badge badge-good", text: "good agreement" })
                            : el("span", { class: "badge badge-weak", text: "weak agreement" }));
      readout.append(headline);
      const sums = el("table", { class: "rank-sums" });
      const labelRow = el("tr", {}, el("th", { text: "alternative" }));
      const sumRow = el("tr", {}, el("th", { text: "rank sum" }));
      names.forEach((name, index) => {
        labelRow.append(el("td", { text: name }));
        sumRow.append(el("td", { "data-sum": name, text: String(data.rank_sums[index]) }));
      });
      sums.append(labelRow, sumRow);
      readout.append(sums);
      readout.append(el("p", {
        "data-field": "spread",
        text: `s = ${data.s}, mean rank sum ${fmtScore(data.mean_rank_sum)}`,
      }));
      const consensus = data.consensus_order.join(", ");
      readout.append(el("p", {
        "data-field": "consensus",
        text: data.consensus_ties
          ? `Consensus order: ${consensus} (ties broken by listing order)`
          : `Consensus order: ${consensus}`,
      }));
    } catch (error) {
      if (ticket !== sequence) {
        return;
      }
      clear(readout);
      if (error instanceof ApiError) {
        readout.append(errorBox(error.message, error.code));
      } else {
        readout.append(errorBox(String(error)));
      }
    }
  }

  const add = el("button", { type: "button", "data-action": "add-row", text: "Add judge" });
  add.addEventListener("click", () => {
    addRow();
  });
  addRow();
  addRow();

  const panel = el("section", { class: "concordance-panel" }, table, add, readout);
  readout.append(el("p", { class: "placeholder", text: "enter at least two complete rankings" }));
  return panel;
}
