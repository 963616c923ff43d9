import type { Summary } from "../api.js";
import type { AppContext } from "../context.js";
import { clear, el, errorBanner } from "../dom.js";
import type { Page } from "../state.js";

const CARDS: { key: keyof Summary; label: string; target: Page }[] = [
  { key: "predicates_without_description", label: "Predicates without description", target: "resources" },
  { key: "classes_without_description", label: "Classes without description", target: "resources" },
  { key: "duplicate_predicate_groups", label: "Duplicate predicate groups", target: "duplicates" },
  { key: "unused_resources", label: "Unused resources", target: "resources" },
  { key: "unlabeled_resources", label: "Unlabeled resources", target: "resources" },
  { key: "papers_total", label: "Papers", target: "papers" },
  { key: "templates_total", label: "Templates", target: "templates" },
  { key: "open_comments", label: "Open comments", target: "comments" },
];

export async function renderSummary(container: HTMLElement, ctx: AppContext): Promise<void> {
  clear(container);
  let summary: Summary;
  try {
    summary = await ctx.api.summary();
  } catch (err) {
    container.append(errorBanner(`Cannot load KPI summary: ${String(err)}`));
    return;
  }
  const grid = el("div", { class: "kpi-grid" });
  for (const card of CARDS) {
    grid.append(
      el(
        "button",
        {
          class: "kpi-card",
          "data-kpi": card.key,
          onclick: () => void ctx.track(ctx.navigate(card.target)),
        },
        el("span", { class: "kpi-value", "data-testid": `kpi-${card.key}` }, String(summary[card.key])),
        el("span", { class: "kpi-label" }, card.label),
      ),
    );
  }
  container.append(
    el("h2", {}, "Quality overview"),
    grid,
    el("p", { class: "muted" }, `Snapshot built ${summary.built_at}`),
  );
}
