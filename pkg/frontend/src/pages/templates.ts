import type { AppContext } from "../context.js";
import { clear, el, emptyNote, errorBanner } from "../dom.js";

export async function renderTemplates(container: HTMLElement, ctx: AppContext): Promise<void> {
  clear(container);
  container.append(el("h2", {}, "Template creation"));
  try {
    const overview = await ctx.api.templatesOverview();
    if (overview.templates.length === 0) {
      container.append(emptyNote("No templates in the snapshot."));
      return;
    }
    const maxCount = Math.max(...overview.monthly_counts.map((m) => m.count), 1);
    const chart = el("div", { class: "month-chart", "data-testid": "month-chart" });
    for (const bucket of overview.monthly_counts) {
      chart.append(
        el(
          "div",
          { class: "month-row" },
          el("span", { class: "month-label" }, bucket.month),
          el("div", {
            class: "month-bar",
            style: `width: ${(100 * bucket.count) / maxCount}%`,
            "data-month": bucket.month,
            "data-count": String(bucket.count),
          }),
          el("span", {}, String(bucket.count)),
        ),
      );
    }
    const table = el("table", { class: "data-table", "data-testid": "templates-table" });
    table.append(el("tr", {}, el("th", {}, "Template"), el("th", {}, "Created")));
    for (const t of overview.templates) {
      table.append(
        el(
          "tr",
          {},
          el("td", {}, `${t.id}${t.label ? ` — ${t.label}` : ""}`),
          el("td", {}, t.created_at ?? "unknown"),
        ),
      );
    }
    container.append(chart, table);
  } catch (err) {
    clear(container);
    container.append(errorBanner(`Cannot load templates: ${String(err)}`));
  }
}
