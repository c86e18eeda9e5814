import { DocumentData, GoalData } from "./api.js";
import { el } from "./dom.js";

/** Read-only view of the goal forest with kind and decomposition badges. */

const KIND_LABELS: Record<string, string> = {
  intermediate: "goal",
  hard: "hard",
  nfrb: "benefit QR",
  nfrn: "cost QR",
  soft: "soft QR",
};

export function createGoalTree(doc: DocumentData): HTMLElement {
  const goals = doc.model.goals;
  const byParent = new Map<string | null, GoalData[]>();
  for (const goal of goals) {
    const key = goal.parent ?? null;
    const bucket = byParent.get(key);
    if (bucket) {
      bucket.push(goal);
    } else {
      byParent.set(key, [goal]);
    }
  }

  function subtree(goal: GoalData): HTMLElement {
    const item = el("li", { "data-goal": goal.id },
                    el("span", { class: "goal-name", text: goal.name }),
                    el("span", { class: `badge kind-${goal.kind}`, text: KIND_LABELS[goal.kind] ?? goal.kind }));
    if (goal.decomposition) {
      item.append(el("span", { class: "badge decomposition", text: goal.decomposition.toUpperCase() }));
    }
    if (goal.cluster) {
      item.append(el("span", { class: "badge cluster", text: goal.cluster }));
    }
    const children = byParent.get(goal.id) ?? [];
    if (children.length > 0) {
      const list = el("ul", {});
      for (const child of children) {
        list.append(subtree(child));
      }
      item.append(list);
    }
    return item;
  }

  const roots = byParent.get(null) ?? [];
  const forest = el("ul", { class: "goal-forest" });
  for (const root of roots) {
    forest.append(subtree(root));
  }

  const section = el("section", { class: "goal-tree" });
  if (doc.model.name) {
    section.append(el("h2", { text: doc.model.name }));
  }
  section.append(forest);
  if (doc.notes && doc.notes.length > 0) {
    const notes = el("ul", { class: "notes" });
    for (const note of doc.notes) {
      notes.append(el("li", { text: note }));
    }
    section.append(el("h3", { text: "Notes" }), notes);
  }
  return section;
}
