import type { PaperCount } from "../api.js";
import { ApiError } from "../api.js";
import type { AppContext } from "../context.js";
import { clear, el, emptyNote, errorBanner, externalLink } from "../dom.js";

const COMMENT_TYPES = ["inaccurate", "incomplete", "duplicate", "question", "other"];

function commentForm(ctx: AppContext, target: string): HTMLElement {
  const typeSelect = el("select", { "data-testid": "comment-type" });
  for (const t of COMMENT_TYPES) typeSelect.append(el("option", { value: t }, t));
  const text = el("textarea", { "data-testid": "comment-text", placeholder: "What needs attention?" });
  const author = el("input", { type: "text", "data-testid": "comment-author", placeholder: "Your name" });
  const note = el("span", { class: "inline-error", "data-testid": "comment-note" });
  const form = el(
    "div",
    { class: "comment-form", "data-testid": "comment-form" },
    el("strong", {}, `Comment on `),
    el("span", { "data-testid": "comment-target" }, target),
    typeSelect,
    text,
    author,
    el("button", {
      text: "File comment",
      "data-testid": "comment-submit",
      onclick: () =>
        void ctx.track(
          (async () => {
            try {
              const created = await ctx.api.createComment({
                target,
                type: typeSelect.value,
                text: text.value,
                author: author.value,
              });
              note.textContent = `Filed as #${created.id}.`;
              note.className = "inline-ok";
            } catch (err) {
              note.textContent =
                err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
              note.className = "inline-error";
            }
          })(),
        ),
    }),
    note,
  );
  return form;
}

export async function renderPapers(container: HTMLElement, ctx: AppContext): Promise<void> {
  clear(container);
  container.append(el("h2", {}, "Papers by statement count"));
  try {
    const [counts, fewest] = await Promise.all([
      ctx.api.statementCounts("asc"),
      ctx.api.fewestPaper(),
    ]);
    if (fewest !== null) {
      container.append(
        el(
          "div",
          { class: "callout", "data-testid": "pinned-paper" },
          el("strong", {}, "Fewest statements: "),
          el("span", { "data-testid": "pinned-paper-id" }, fewest.id),
          ` — ${fewest.label ?? "(unlabeled)"} with `,
          el("span", { "data-testid": "pinned-paper-count" }, String(fewest.statements)),
          " statement(s) ",
          externalLink(fewest.url, "open in the source KG"),
        ),
      );
    }
    if (counts.total === 0) {
      container.append(emptyNote("No papers in the snapshot."));
    } else {
      const formHost = el("div", {});
      const table = el("table", { class: "data-table", "data-testid": "papers-table" });
      table.append(
        el("tr", {}, el("th", {}, "Paper"), el("th", {}, "Statements"), el("th", {}, "")),
      );
      for (const paper of counts.items) {
        table.append(paperRow(ctx, paper, formHost));
      }
      container.append(table, formHost);
    }

    // papers per research field, by field id
    const fieldInput = el("input", { type: "text", placeholder: "Research field id, e.g. F1", "data-testid": "field-input" });
    const fieldResult = el("div", { "data-testid": "field-result" });
    container.append(
      el("h3", {}, "Papers in a research field"),
      el(
        "div",
        { class: "field-form" },
        fieldInput,
        el("button", {
          text: "Count",
          "data-testid": "field-submit",
          onclick: () =>
            void ctx.track(
              (async () => {
                clear(fieldResult);
                try {
                  const found = await ctx.api.fieldPapers(fieldInput.value.trim());
                  fieldResult.append(
                    el("p", {}, el("strong", { "data-testid": "field-count" }, String(found.count)), " paper(s)"),
                    ...found.items.map((p) => el("div", {}, externalLink(p.url, p.id), ` ${p.label ?? ""}`)),
                  );
                } catch (err) {
                  fieldResult.append(errorBanner(String(err)));
                }
              })(),
            ),
        }),
      ),
      fieldResult,
    );
  } catch (err) {
    clear(container);
    container.append(errorBanner(`Cannot load papers: ${String(err)}`));
  }
}

function paperRow(ctx: AppContext, paper: PaperCount, formHost: HTMLElement): HTMLElement {
  return el(
    "tr",
    { "data-paper": paper.id },
    el("td", {}, externalLink(paper.url, paper.id), paper.label ? ` — ${paper.label}` : ""),
    el("td", {}, String(paper.statements)),
    el(
      "td",
      {},
      el("button", {
        text: "comment",
        class: "comment-button",
        "data-testid": `comment-${paper.id}`,
        onclick: () => {
          clear(formHost);
          formHost.append(commentForm(ctx, paper.id));
        },
      }),
    ),
  );
}
