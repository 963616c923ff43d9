import { ApiClient } from "./api.js";
import type { AppContext } from "./context.js";
import { clear, el } from "./dom.js";
import { renderComments } from "./pages/comments.js";
import { renderComparisons } from "./pages/comparisons.js";
import { renderDuplicates } from "./pages/duplicates.js";
import { renderPapers } from "./pages/papers.js";
import { renderResources } from "./pages/resources.js";
import { renderSummary } from "./pages/summary.js";
import { renderTemplates } from "./pages/templates.js";
import { renderVisitors } from "./pages/visitors.js";
import { PAGES, ViewState, isPage, type Page } from "./state.js";

export interface AppOptions {
  baseUrl?: string;
  fetchImpl?: typeof fetch;
  maxGraphNodes?: number;
  /** Attach hashchange-based routing (off in tests). */
  bindHashRouter?: boolean;
}

export interface App {
  state: ViewState;
  api: ApiClient;
  navigate(page: Page): Promise<void>;
  /** Resolves once all tracked background work has settled. */
  idle(): Promise<void>;
  root: HTMLElement;
}

const RENDERERS: Record<Page, (container: HTMLElement, ctx: AppContext) => Promise<void>> = {
  summary: renderSummary,
  duplicates: renderDuplicates,
  resources: renderResources,
  visitors: renderVisitors,
  papers: renderPapers,
  comparisons: renderComparisons,
  templates: renderTemplates,
  comments: renderComments,
};

export function pageFromHash(hash: string): Page {
  const name = hash.replace(/^#\/?/, "");
  return isPage(name) ? name : "summary";
}

export function createApp(root: HTMLElement, options: AppOptions = {}): App {
  const baseUrl = options.baseUrl ?? "";
  const api = new ApiClient(baseUrl, options.fetchImpl);
  const state = new ViewState();
  const pending = new Set<Promise<unknown>>();

  function track<T>(work: Promise<T>): Promise<T> {
    pending.add(work);
    work.finally(() => pending.delete(work)).catch(() => {});
    return work;
  }

  async function idle(): Promise<void> {
    while (pending.size > 0) {
      await Promise.allSettled([...pending]);
    }
  }

  const nav = el("nav", { class: "nav" });
  const main = el("main", { class: "page" });
  const ctx: AppContext = {
    api,
    state,
    navigate,
    track,
    maxGraphNodes: options.maxGraphNodes ?? 40,
  };

  const navLinks = new Map<Page, HTMLElement>();
  for (const page of PAGES) {
    const link = el(
      "a",
      {
        href: `#/${page}`,
        "data-nav": page,
        onclick: (event: Event) => {
          event.preventDefault();
          void track(navigate(page));
        },
      },
      page,
    );
    navLinks.set(page, link);
    nav.append(link);
  }

  async function navigate(page: Page): Promise<void> {
    state.page = page;
    for (const [name, link] of navLinks) {
      link.classList.toggle("active", name === page);
    }
    clear(main);
    main.append(el("p", { class: "muted" }, "Loading…"));
    await RENDERERS[page](main, ctx);
  }

  clear(root);
  root.append(el("header", {}, el("h1", {}, "KG curation dashboard"), nav), main);

  if (options.bindHashRouter) {
    window.addEventListener("hashchange", () => {
      void track(navigate(pageFromHash(window.location.hash)));
    });
  }

  return { state, api, navigate: (page) => track(navigate(page)), idle, root };
}
