/** Tiny DOM helpers; no framework, no templates. */

type Child = Node | string | null | undefined;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | ((event: Event) => void)> = {},
  ...children: Child[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (typeof value === "function") {
      node.addEventListener(key.replace(/^on/, ""), value);
    } else if (key === "text") {
      node.textContent = value;
    } else {
      node.setAttribute(key, value);
    }
  }
  for (const child of children) {
    if (child === null || child === undefined) continue;
    node.append(child instanceof Node ? child : document.createTextNode(child));
  }
  return node;
}

export function clear(node: Element): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

export function errorBanner(message: string): HTMLElement {
  return el("div", { class: "banner error", "data-testid": "error-banner" }, message);
}

export function emptyNote(message: string): HTMLElement {
  return el("p", { class: "empty-note", "data-testid": "empty-note" }, message);
}

export function externalLink(url: string, text: string): HTMLElement {
  return el("a", { href: url, target: "_blank", rel: "noopener", class: "deep-link" }, text);
}
