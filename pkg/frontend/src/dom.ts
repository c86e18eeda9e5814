/** Small DOM construction and number formatting helpers.
 *
 * Formatting here is string presentation of values the API returned;
 * nothing in this module derives a new quantity.
 */

type Child = Node | string;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: Child[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") {
      node.className = value;
    } else if (key === "text") {
      node.textContent = value;
    } else {
      node.setAttribute(key, value);
    }
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) {
    node.removeChild(node.firstChild);
  }
}

/** Weight shown with four decimals, truncated rather than rounded so the
 * display never overstates a weight (0.231166 -> "0.2311"). */
export function fmtWeight(value: number): string {
  const widened = value.toFixed(10);
  return widened.slice(0, widened.indexOf(".") + 5);
}

/** Closeness coefficients and ratios shown with four decimals. */
export function fmtScore(value: number): string {
  return value.toFixed(4);
}

/** Concordance coefficient shown with three decimals. */
export function fmtW(value: number): string {
  return value.toFixed(3);
}

/** Signed delta with four decimals, keeping an explicit plus sign. */
export function fmtDelta(value: number): string {
  const text = value.toFixed(4);
  return value > 0 ? `+${text}` : text;
}

export function errorBox(message: string, code?: string): HTMLElement {
  const label = code ? `${code}: ${message}` : message;
  return el("div", { class: "error-box", role: "alert", text: label });
}
