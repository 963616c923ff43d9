import type { DateRange, VisitsGraph } from "../api.js";
import type { AppContext } from "../context.js";
import { isAbortError } from "../context.js";
import { clear, el, emptyNote, errorBanner } from "../dom.js";
import { capByDegree, forceLayout } from "../force.js";
import { isValidRange } from "../state.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 720;
const HEIGHT = 480;

function drawNetwork(host: HTMLElement, graph: VisitsGraph, maxNodes: number): void {
  clear(host);
  if (graph.nodes.length === 0) {
    host.append(emptyNote("No visits in range."));
    return;
  }
  const capped = capByDegree(graph.nodes, graph.edges, maxNodes);
  if (capped.hiddenNodes > 0) {
    host.append(
      el(
        "p",
        { class: "muted", "data-testid": "overflow-notice" },
        `Showing the ${capped.nodes.length} busiest pages; ${capped.hiddenNodes} more hidden.`,
      ),
    );
  }
  const positions = forceLayout(capped.nodes, capped.edges, WIDTH, HEIGHT);
  const maxCount = Math.max(...capped.edges.map((e) => e.count), 1);

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("class", "network");
  svg.setAttribute("data-testid", "visitor-network");
  for (const edge of capped.edges) {
    const a = positions.get(edge.from)!;
    const b = positions.get(edge.to)!;
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", a.x.toFixed(1));
    line.setAttribute("y1", a.y.toFixed(1));
    line.setAttribute("x2", b.x.toFixed(1));
    line.setAttribute("y2", b.y.toFixed(1));
    line.setAttribute("stroke", "#7a8ba6");
    line.setAttribute("stroke-width", String(1 + (4 * edge.count) / maxCount));
    line.setAttribute("data-edge", `${edge.from}->${edge.to}`);
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${edge.from} → ${edge.to}: ${edge.count}`;
    line.append(title);
    svg.append(line);
  }
  for (const node of capped.nodes) {
    const p = positions.get(node)!;
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", p.x.toFixed(1));
    circle.setAttribute("cy", p.y.toFixed(1));
    circle.setAttribute("r", "6");
    circle.setAttribute("fill", "#2b6cb0");
    svg.append(circle);
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", (p.x + 8).toFixed(1));
    label.setAttribute("y", (p.y - 8).toFixed(1));
    label.setAttribute("class", "node-label");
    label.textContent = node;
    svg.append(label);
  }
  host.append(svg);
}

export async function renderVisitors(container: HTMLElement, ctx: AppContext): Promise<void> {
  clear(container);
  container.append(el("h2", {}, "Visitor paths"));

  const fromInput = el("input", { type: "date", "data-testid": "range-from" });
  const toInput = el("input", { type: "date", "data-testid": "range-to" });
  fromInput.value = ctx.state.range.from ?? "";
  toInput.value = ctx.state.range.to ?? "";
  const rangeError = el("span", { class: "inline-error", "data-testid": "range-error" });
  const rangeForm = el(
    "div",
    { class: "range-picker" },
    el("label", {}, "From ", fromInput),
    el("label", {}, "To ", toInput),
    rangeError,
  );

  const networkHost = el("div", { class: "panel network-panel" });
  const topEdgeHost = el("div", { class: "panel", "data-testid": "top-edge-panel" });
  const nextHost = el("div", { class: "panel", "data-testid": "next-panel" });
  const pathsHost = el("div", { class: "panel", "data-testid": "paths-panel" });

  const minLenInput = el("input", { type: "number", value: "3", min: "2", "data-testid": "min-len" });
  const topKInput = el("input", { type: "number", value: "5", min: "1", "data-testid": "top-k" });
  const minLenError = el("span", { class: "inline-error", "data-testid": "minlen-error" });
  const pathsButton = el("button", { text: "Find paths", "data-testid": "find-paths" });
  const pathsForm = el(
    "div",
    { class: "paths-form" },
    el("label", {}, "Path length ", minLenInput),
    el("label", {}, "Top ", topKInput),
    pathsButton,
    minLenError,
  );

  container.append(rangeForm, networkHost, topEdgeHost, nextHost, pathsForm, pathsHost);

  let controller: AbortController | null = null;

  async function refetchPanels(): Promise<void> {
    controller?.abort(); // latest range wins
    const current = new AbortController();
    controller = current;
    const range: DateRange = ctx.state.range;
    try {
      const [graph, topEdge] = await Promise.all([
        ctx.api.visitsGraph(range, current.signal),
        ctx.api.topEdge(range, current.signal),
      ]);
      if (current.signal.aborted) return;
      drawNetwork(networkHost, graph, ctx.maxGraphNodes);

      clear(topEdgeHost);
      topEdgeHost.append(el("h3", {}, "Most used transition"));
      if (topEdge === null) {
        topEdgeHost.append(emptyNote("No visits in range."));
        clear(nextHost);
        return;
      }
      topEdgeHost.append(
        el(
          "p",
          {},
          el("strong", { "data-testid": "top-edge" }, `${topEdge.from} → ${topEdge.to}`),
          el("span", { "data-testid": "top-edge-count" }, ` (${topEdge.count} times)`),
        ),
      );
      const next = await ctx.api.nextSteps(topEdge.to, range, current.signal);
      if (current.signal.aborted) return;
      clear(nextHost);
      nextHost.append(el("h3", {}, `Where visitors go after ${next.node}`));
      if (next.next.length === 0) {
        nextHost.append(emptyNote("No onward navigation recorded."));
      } else {
        const list = el("ol", { "data-testid": "next-list" });
        for (const step of next.next) {
          list.append(el("li", {}, `${step.page} (${step.count})`));
        }
        nextHost.append(list);
      }
    } catch (err) {
      if (isAbortError(err)) return;
      clear(networkHost);
      clear(topEdgeHost);
      clear(nextHost);
      networkHost.append(errorBanner(`Cannot load visitor data: ${String(err)}`));
    }
  }

  async function findPaths(): Promise<void> {
    const minLen = Number(minLenInput.value);
    const topK = Number(topKInput.value);
    if (!Number.isInteger(minLen) || minLen < 2) {
      minLenError.textContent = "Path length must be at least 2.";
      return; // client-side validation blocks the request
    }
    if (!Number.isInteger(topK) || topK < 1) {
      minLenError.textContent = "Top-k must be at least 1.";
      return;
    }
    minLenError.textContent = "";
    clear(pathsHost);
    try {
      const result = await ctx.api.paths(minLen, topK, ctx.state.range);
      clear(pathsHost);
      pathsHost.append(el("h3", {}, "Most used paths"));
      if (result.items.length === 0) {
        pathsHost.append(emptyNote("No paths of that length in range."));
        return;
      }
      const list = el("ol", { "data-testid": "paths-list" });
      for (const item of result.items) {
        list.append(
          el(
            "li",
            {},
            el("span", { class: "path" }, item.path.join(" → ")),
            el("span", { "data-testid": "path-occurrences" }, ` — ${item.occurrences} occurrences`),
          ),
        );
      }
      pathsHost.append(list);
    } catch (err) {
      clear(pathsHost);
      pathsHost.append(errorBanner(`Cannot mine paths: ${String(err)}`));
    }
  }

  function onRangeChange(): void {
    const candidate = { from: fromInput.value || null, to: toInput.value || null };
    if (!isValidRange(candidate)) {
      rangeError.textContent = "Invalid range: 'from' must not be after 'to'.";
      return; // invalid ranges never trigger a fetch
    }
    rangeError.textContent = "";
    ctx.state.setRange(candidate.from, candidate.to);
    void ctx.track(refetchPanels());
  }

  fromInput.addEventListener("change", onRangeChange);
  toInput.addEventListener("change", onRangeChange);
  pathsButton.addEventListener("click", () => void ctx.track(findPaths()));

  await refetchPanels();
}
