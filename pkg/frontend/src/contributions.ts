import { ContributionData, DocumentData } from "./api.js";
import { el } from "./dom.js";

/** Contribution link browser. Each row can hand its link to the what-if
 * panel as a prefilled edit; the browser itself never mutates anything. */

export function createContributionBrowser(
  doc: DocumentData,
  onWhatIf: (link: ContributionData) => void,
): HTMLElement {
  const names = new Map(doc.model.goals.map((goal) => [goal.id, goal.name]));
  const table = el("table", { class: "contribution-table", "data-numbers": "api" });
  table.append(el("tr", {},
                  el("th", { text: "source" }),
                  el("th", { text: "target" }),
                  el("th", { text: "payload" }),
                  el("th", {})));
  for (const link of doc.model.contributions ?? []) {
    const payload = link.symbol !== undefined
      ? link.symbol
      : `${link.value} ${link.metric ?? ""}`.trim();
    const pick = el("button", { type: "button", class: "link-button", text: "what-if" });
    pick.addEventListener("click", () => onWhatIf(link));
    const actions = el("td", {});
    actions.append(pick);
    table.append(el("tr", { "data-link": `${link.source}→${link.target}` },
                    el("td", { text: names.get(link.source) ?? link.source }),
                    el("td", { text: names.get(link.target) ?? link.target }),
                    el("td", { class: "payload", text: payload }),
                    actions));
  }
  return el("section", { class: "contribution-browser" }, table);
}
