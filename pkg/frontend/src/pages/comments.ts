import type { Comment } from "../api.js";
import type { AppContext } from "../context.js";
import { clear, el, emptyNote, errorBanner } from "../dom.js";

const TYPES = ["", "inaccurate", "incomplete", "duplicate", "question", "other"];
const STATUSES = ["", "open", "resolved"];

export async function renderComments(container: HTMLElement, ctx: AppContext): Promise<void> {
  clear(container);
  container.append(el("h2", {}, "Curation comments"));

  const targetInput = el("input", { type: "text", placeholder: "Filter by target id", "data-testid": "filter-target" });
  const statusSelect = el("select", { "data-testid": "filter-status" });
  for (const s of STATUSES) statusSelect.append(el("option", { value: s }, s || "any status"));
  const typeSelect = el("select", { "data-testid": "filter-type" });
  for (const t of TYPES) typeSelect.append(el("option", { value: t }, t || "any type"));
  const listHost = el("div", { "data-testid": "comment-list" });

  async function refresh(): Promise<void> {
    clear(listHost);
    try {
      const listing = await ctx.api.comments({
        target: targetInput.value.trim() || undefined,
        status: statusSelect.value || undefined,
        type: typeSelect.value || undefined,
      });
      if (listing.total === 0) {
        listHost.append(emptyNote("No comments match."));
        return;
      }
      for (const comment of listing.items) {
        listHost.append(commentRow(comment));
      }
    } catch (err) {
      listHost.append(errorBanner(`Cannot load comments: ${String(err)}`));
    }
  }

  function commentRow(comment: Comment): HTMLElement {
    const flip = comment.status === "open" ? "resolved" : "open";
    return el(
      "div",
      { class: `comment ${comment.status}`, "data-comment-id": String(comment.id) },
      el("span", { class: "comment-id" }, `#${comment.id} `),
      el("span", { class: "comment-target" }, comment.target),
      el("span", { class: "comment-type" }, ` [${comment.type}] `),
      el("span", { class: "comment-text" }, comment.text),
      el("span", { class: "comment-meta" }, ` — ${comment.author}, ${comment.created_at} `),
      el("span", { class: "comment-status", "data-testid": `status-${comment.id}` }, comment.status),
      el("button", {
        text: flip === "resolved" ? "resolve" : "reopen",
        "data-testid": `toggle-${comment.id}`,
        onclick: () =>
          void ctx.track(
            (async () => {
              await ctx.api.setCommentStatus(comment.id, flip);
              await refresh();
            })(),
          ),
      }),
    );
  }

  const onFilterChange = () => void ctx.track(refresh());
  targetInput.addEventListener("change", onFilterChange);
  statusSelect.addEventListener("change", onFilterChange);
  typeSelect.addEventListener("change", onFilterChange);

  container.append(
    el("div", { class: "filters" }, targetInput, statusSelect, typeSelect),
    listHost,
  );
  await refresh();
}
