import type { AppContext } from "../context.js";
import { clear, el, emptyNote, errorBanner, externalLink } from "../dom.js";

export async function renderDuplicates(container: HTMLElement, ctx: AppContext): Promise<void> {
  clear(container);
  try {
    const [listing, task1] = await Promise.all([ctx.api.duplicates(), ctx.api.task1()]);
    container.append(el("h2", {}, "Duplicate predicates"));

    if (task1 !== null) {
      container.append(
        el(
          "div",
          { class: "callout", "data-testid": "task1-callout" },
          el("strong", {}, "Smallest duplicate group lacking a description: "),
          el("span", { "data-testid": "task1-candidate" }, task1.candidate.id),
          ` ("${task1.group.normalized_label}", ${task1.group.size} predicates) `,
          externalLink(task1.candidate.url, "open in the source KG"),
        ),
      );
    }

    if (listing.total === 0) {
      container.append(emptyNote("No duplicate predicate groups."));
      return;
    }
    const table = el("table", { class: "data-table", "data-testid": "duplicates-table" });
    table.append(
      el("tr", {}, el("th", {}, "Normalized label"), el("th", {}, "Size"), el("th", {}, "Members")),
    );
    for (const group of listing.items) {
      const undescribed = new Set(group.members_without_description);
      const cell = el("td", {});
      group.members.forEach((member, i) => {
        if (i > 0) cell.append(", ");
        cell.append(
          el(
            "span",
            { class: undescribed.has(member) ? "member undescribed" : "member" },
            externalLink(group.member_urls[i], member),
          ),
        );
      });
      table.append(
        el(
          "tr",
          { class: "group-row" },
          el("td", {}, group.normalized_label),
          el("td", {}, String(group.size)),
          cell,
        ),
      );
    }
    container.append(table);
  } catch (err) {
    clear(container);
    container.append(errorBanner(`Cannot load duplicate groups: ${String(err)}`));
  }
}
