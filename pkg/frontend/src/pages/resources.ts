import type { Listing } from "../api.js";
import type { AppContext } from "../context.js";
import { clear, el, emptyNote, errorBanner, externalLink } from "../dom.js";

const PAGE_SIZE = 25;

interface Section {
  key: string;
  title: string;
  fetch(ctx: AppContext, offset: number): Promise<Listing>;
}

const SECTIONS: Section[] = [
  {
    key: "unused",
    title: "Unused resources",
    fetch: (ctx, offset) => ctx.api.resourcesUnused(PAGE_SIZE, offset),
  },
  {
    key: "unlabeled",
    title: "Unlabeled resources",
    fetch: (ctx, offset) => ctx.api.resourcesUnlabeled(PAGE_SIZE, offset),
  },
  {
    key: "predicates",
    title: "Predicates without a description",
    fetch: (ctx, offset) => ctx.api.predicatesUndescribed(PAGE_SIZE, offset),
  },
  {
    key: "classes",
    title: "Classes without a description",
    fetch: (ctx, offset) => ctx.api.classesUndescribed(PAGE_SIZE, offset),
  },
];

async function renderSection(host: HTMLElement, ctx: AppContext, section: Section): Promise<void> {
  clear(host);
  const offset = ctx.state.cursor(section.key);
  let listing: Listing;
  try {
    listing = await section.fetch(ctx, offset);
  } catch (err) {
    host.append(errorBanner(`Cannot load ${section.title.toLowerCase()}: ${String(err)}`));
    return;
  }
  host.append(el("h3", {}, `${section.title} (${listing.total})`));
  if (listing.total === 0) {
    host.append(emptyNote("Nothing flagged."));
    return;
  }
  const list = el("ul", { class: "entity-list", "data-testid": `listing-${section.key}` });
  for (const item of listing.items) {
    list.append(
      el("li", {}, externalLink(item.url, item.id), item.label ? ` — ${item.label}` : ""),
    );
  }
  host.append(list);

  const pager = el("div", { class: "pager" });
  if (offset > 0) {
    pager.append(
      el("button", {
        text: "previous",
        onclick: () =>
          void ctx.track(
            (async () => {
              ctx.state.setCursor(section.key, offset - PAGE_SIZE);
              await renderSection(host, ctx, section);
            })(),
          ),
      }),
    );
  }
  if (offset + PAGE_SIZE < listing.total) {
    pager.append(
      el("button", {
        text: "next",
        "data-testid": `next-${section.key}`,
        onclick: () =>
          void ctx.track(
            (async () => {
              ctx.state.setCursor(section.key, offset + PAGE_SIZE);
              await renderSection(host, ctx, section);
            })(),
          ),
      }),
    );
  }
  pager.append(
    el(
      "span",
      { class: "muted" },
      ` showing ${offset + 1}–${Math.min(offset + PAGE_SIZE, listing.total)} of ${listing.total}`,
    ),
  );
  host.append(pager);
}

export async function renderResources(container: HTMLElement, ctx: AppContext): Promise<void> {
  clear(container);
  container.append(el("h2", {}, "Flagged entities"));
  const hosts = SECTIONS.map(() => el("section", { class: "listing-section" }));
  hosts.forEach((host) => container.append(host));
  await Promise.all(SECTIONS.map((section, i) => renderSection(hosts[i], ctx, section)));
}
