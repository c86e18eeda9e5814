import { ApiClient, ApiError, DocumentData, OutcomeData, RunData } from "./api.js";
import { clear, el, errorBox, fmtScore, fmtWeight } from "./dom.js";

/** Scenario runner. Picks a scenario from the loaded document, asks the
 * server to evaluate it and lays the returned ranking out as closeness bars
 * with chosen/rejected badges and an expandable trace. */

export function outcomesOf(run: RunData): [string | null, OutcomeData][] {
  if (run.outcome) {
    return [[null, run.outcome]];
  }
  return Object.entries(run.per_goal ?? {});
}

/** Closeness values arrive as a list in decision-matrix row order; the row
 * identifiers for that order are published in the decision-matrix trace
 * step. Pair them up so alternatives can be looked up by name. */
export function closenessByName(outcome: OutcomeData): Map<string, number> {
  const paired = new Map<string, number>();
  const step = outcome.trace.find((candidate) => candidate.step === "decision-matrix");
  const data = step?.data as { alternatives?: unknown } | undefined;
  const order = Array.isArray(data?.alternatives) ? (data.alternatives as string[]) : [];
  order.forEach((name, index) => {
    const value = outcome.ranking.closeness[index];
    if (typeof name === "string" && value !== undefined) {
      paired.set(name, value);
    }
  });
  return paired;
}

export function renderOutcome(outcome: OutcomeData, heading?: string): HTMLElement {
  const block = el("div", { class: "outcome" });
  if (heading) {
    block.append(el("h3", { text: heading }));
  }
  const priorities = Object.entries(outcome.goal_priorities);
  if (priorities.length > 0) {
    const list = el("ul", { class: "priority-list" });
    for (const [goal, weight] of priorities) {
      list.append(
        el("li", { "data-priority": goal },
           el("span", { class: "label", text: goal }),
           el("span", { class: "value", text: fmtWeight(weight) })),
      );
    }
    block.append(el("h4", { text: "Goal priorities" }), list);
  }
  const closeness = closenessByName(outcome);
  const list = el("ol", { class: "ranking-list" });
  for (const name of outcome.ranking.ranking) {
    const score = closeness.get(name);
    const item = el("li", { "data-alternative": name },
                    el("span", { class: "label", text: name }),
                    el("span", { class: "bar" },
                       el("span", { class: "fill" })),
                    el("span", { class: "value", text: score === undefined ? "" : fmtScore(score) }));
    const fill = item.querySelector<HTMLElement>(".fill");
    if (fill && score !== undefined) {
      fill.style.width = `${Math.max(0, Math.min(1, score)) * 100}%`;
    }
    if (outcome.chosen.includes(name)) {
      item.append(el("span", { class: "badge badge-chosen", text: "chosen" }));
    }
    if (outcome.rejected.includes(name)) {
      item.append(el("span", { class: "badge badge-rejected", text: "rejected" }));
    }
    list.append(item);
  }
  block.append(list);
  for (const warning of outcome.ranking.warnings.concat(outcome.warnings)) {
    block.append(el("p", { class: "warning-line", text: warning }));
  }
  const trace = el("div", { class: "trace" });
  for (const step of outcome.trace) {
    trace.append(
      el("details", { "data-step": step.step },
         el("summary", { text: `${step.step}: ${step.summary}` }),
         el("pre", { text: JSON.stringify(step.data, null, 2) })),
    );
  }
  block.append(trace);
  return block;
}

export function createRankingView(api: ApiClient, doc: DocumentData): HTMLElement {
  const names = Object.keys(doc.scenarios ?? {});
  const select = el("select", { "data-field": "scenario" },
                    el("option", { value: "", text: "choose a scenario" }));
  for (const name of names) {
    select.append(el("option", { value: name, text: name }));
  }
  const run = el("button", { type: "button", "data-action": "run", text: "Run" });
  run.disabled = true;
  select.addEventListener("change", () => {
    run.disabled = select.value === "";
  });
  const results = el("div", { class: "results", "data-numbers": "api" });

  run.addEventListener("click", () => {
    void (async () => {
      run.disabled = true;
      try {
        const data = await api.runScenario(select.value);
        clear(results);
        for (const [goal, outcome] of outcomesOf(data)) {
          results.append(renderOutcome(outcome, goal ?? undefined));
        }
      } catch (error) {
        clear(results);
        if (error instanceof ApiError) {
          results.append(errorBox(error.message, error.code));
        } else {
          results.append(errorBox(String(error)));
        }
      } finally {
        run.disabled = select.value === "";
      }
    })();
  });

  return el("section", { class: "ranking-view" },
            el("div", { class: "controls" }, select, run),
            results);
}
