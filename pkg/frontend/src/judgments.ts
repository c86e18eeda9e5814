import { ApiClient, ApiError } from "./api.js";
import { clear, el, errorBox, fmtScore, fmtWeight } from "./dom.js";

/** Pairwise judgment editor.
 *
 * Only the upper triangle is editable. The diagonal is pinned at 1 and each
 * lower cell displays the reciprocal of its mirrored entry, so the matrix a
 * user can build is reciprocal by construction. Every accepted edit sends the
 * whole matrix to the server; the weight vector and the consistency ratio
 * shown next to the grid are taken from that response, never derived here.
 */

const FRACTION = /^(\d+(?:\.\d+)?)\s*\/\s*(\d+(?:\.\d+)?)$/;

/** Parse a judgment cell, accepting decimals and "a/b" fractions. */
export function parseJudgment(raw: string): number | null {
  const text = raw.trim();
  const match = FRACTION.exec(text);
  const value = match ? Number(match[1]) / Number(match[2]) : Number(text);
  if (!Number.isFinite(value) || value <= 0 || text === "") {
    return null;
  }
  return value;
}

/** Reciprocal of the user's input, rendered as the fraction they would
 * write by hand ("3" -> "1/3", "1/5" -> "5"). */
export function mirrorLabel(raw: string, value: number): string {
  if (value === 1) {
    return "1";
  }
  const match = FRACTION.exec(raw.trim());
  if (match) {
    return match[1] === "1" ? match[2]! : `${match[2]}/${match[1]}`;
  }
  return `1/${raw.trim()}`;
}

export function createJudgmentEditor(api: ApiClient, labels: string[]): HTMLElement {
  const n = labels.length;
  const entries = labels.map(() => labels.map(() => 1));
  const mirrors = new Map<string, HTMLElement>();
  const note = el("p", { class: "field-note", "data-field": "note" });
  const results = el("div", { class: "results", "data-numbers": "api" });
  let sequence = 0;

  const table = el("table", { class: "judgment-grid" });
  const head = el("tr", {}, el("th", {}));
  for (const label of labels) {
    head.append(el("th", { text: label }));
  }
  table.append(head);

  for (let i = 0; i < n; i += 1) {
    const row = el("tr", {}, el("th", { text: labels[i]! }));
    for (let j = 0; j < n; j += 1) {
      const cell = el("td", {});
      if (i === j) {
        cell.append(el("span", { class: "diagonal", text: "1" }));
      } else if (i < j) {
        const input = el("input", {
          type: "text",
          value: "1",
          "data-cell": `${i},${j}`,
          "aria-label": `${labels[i]} versus ${labels[j]}`,
        });
        input.addEventListener("change", () => onEdit(i, j, input));
        cell.append(input);
      } else {
        const span = el("span", { class: "mirror", "data-cell": `${i},${j}`, text: "1" });
        mirrors.set(`${i},${j}`, span);
        cell.append(span);
      }
      row.append(cell);
    }
    table.append(row);
  }

  function onEdit(i: number, j: number, input: HTMLInputElement): void {
    const value = parseJudgment(input.value);
    if (value === null) {
      input.classList.add("invalid");
      note.textContent = "judgments must be positive numbers (decimals or a/b fractions)";
      return;
    }
    input.classList.remove("invalid");
    note.textContent = "";
    entries[i]![j] = value;
    entries[j]![i] = 1 / value;
    const mirror = mirrors.get(`${j},${i}`);
    if (mirror) {
      mirror.textContent = mirrorLabel(input.value, value);
    }
    void refresh();
  }

  async function refresh(): Promise<void> {
    sequence += 1;
    const ticket = sequence;
    try {
      const data = await api.priorities(labels, entries.map((row) => [...row]));
      if (ticket !== sequence) {
        return;
      }
      clear(results);
      const list = el("ul", { class: "weight-list" });
      data.labels.forEach((label, index) => {
        list.append(
          el("li", { "data-weight": label },
             el("span", { class: "label", text: label }),
             el("span", { class: "value", text: fmtWeight(data.weights[index]!) })),
        );
      });
      results.append(el("h3", { text: "Derived weights" }), list);
      const report = data.consistency;
      results.append(
        el("p", { "data-field": "cr", text: `CR = ${fmtScore(report.cr)}` }),
      );
      if (!report.acceptable) {
        results.append(
          el("div", {
            class: "warning-banner",
            "data-field": "cr-warning",
            text: "consistency ratio exceeds 0.10; revise the judgments",
          }),
        );
      }
    } catch (error) {
      if (ticket !== sequence) {
        return;
      }
      clear(results);
      if (error instanceof ApiError) {
        results.append(errorBox(error.message, error.code));
      } else {
        results.append(errorBox(String(error)));
      }
    }
  }

  return el("section", { class: "judgment-editor" }, table, note, results);
}
