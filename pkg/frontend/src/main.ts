import { ApiClient, ApiError, DocumentData } from "./api.js";
import { createConcordancePanel } from "./concordance.js";
import { createContributionBrowser } from "./contributions.js";
import { clear, el, errorBox } from "./dom.js";
import { createGoalTree } from "./goaltree.js";
import { createJudgmentEditor } from "./judgments.js";
import { createRankingView } from "./ranking.js";
import { createWhatIfPanel } from "./whatif.js";

/** Application shell: loads the model once, then swaps tab panels in and
 * out. All panels talk to the same ApiClient; none of them keeps local
 * copies of server results beyond what is on screen. */

const TABS = ["Goals", "Judgments", "Ranking", "What-if", "Concordance", "Contributions"] as const;

type TabName = (typeof TABS)[number];

export async function boot(root: HTMLElement, api: ApiClient): Promise<void> {
  clear(root);
  let doc: DocumentData;
  try {
    doc = await api.getModel();
  } catch (error) {
    const message = error instanceof ApiError ? error.message : String(error);
    root.append(errorBox(`could not load the model: ${message}`));
    return;
  }

  const header = el("header", {},
                    el("h1", { text: doc.model.name ?? doc.name ?? "decision workbench" }));
  const nav = el("nav", { class: "tabs", role: "tablist" });
  const panel = el("main", { class: "panel" });
  root.append(header, nav, panel);

  const firstScenario = Object.values(doc.scenarios ?? {})[0];
  const defaultLabels = firstScenario
    ? firstScenario.alternatives.map((id) => goalName(doc, id))
    : ["first", "second"];

  const whatIf = createWhatIfPanel(api, doc);
  const panels = new Map<TabName, () => HTMLElement>([
    ["Goals", () => createGoalTree(doc)],
    ["Judgments", () => judgmentsTab(api, defaultLabels)],
    ["Ranking", () => createRankingView(api, doc)],
    ["What-if", () => whatIf.element],
    ["Concordance", () => createConcordancePanel(api, defaultLabels)],
    ["Contributions", () => createContributionBrowser(doc, (link) => {
      whatIf.prefill(link);
      activate("What-if");
    })],
  ]);

  const buttons = new Map<TabName, HTMLButtonElement>();
  const cache = new Map<TabName, HTMLElement>();

  function activate(name: TabName): void {
    for (const [tab, button] of buttons) {
      button.classList.toggle("active", tab === name);
    }
    clear(panel);
    let view = cache.get(name);
    if (!view) {
      view = panels.get(name)!();
      cache.set(name, view);
    }
    panel.append(view);
  }

  for (const name of TABS) {
    const button = el("button", { type: "button", role: "tab", text: name });
    button.addEventListener("click", () => activate(name));
    buttons.set(name, button);
    nav.append(button);
  }
  activate("Goals");
}

function goalName(doc: DocumentData, id: string): string {
  return doc.model.goals.find((goal) => goal.id === id)?.name ?? id;
}

function judgmentsTab(api: ApiClient, defaultLabels: string[]): HTMLElement {
  const labels = el("input", {
    type: "text",
    "data-field": "labels",
    value: defaultLabels.join(", "),
  });
  const rebuild = el("button", { type: "button", text: "Rebuild grid" });
  const host = el("div", {});

  function build(): void {
    const parts = labels.value.split(",").map((part) => part.trim()).filter((part) => part !== "");
    clear(host);
    if (parts.length < 2) {
      host.append(el("p", { class: "placeholder", text: "give at least two labels" }));
      return;
    }
    host.append(createJudgmentEditor(api, parts));
  }
  rebuild.addEventListener("click", build);
  build();

  return el("section", { class: "judgments-tab" },
            el("label", { class: "field" }, el("span", { text: "criteria" }), labels),
            rebuild,
            host);
}

const mount = document.getElementById("app-root");
if (mount) {
  const params = new URLSearchParams(window.location.search);
  void boot(mount, new ApiClient(params.get("api") ?? ""));
}
