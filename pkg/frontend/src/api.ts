/** Typed client for the kgdash JSON API. The UI computes no KPI values:
 * every number it shows comes back from one of these calls. */

export interface Summary {
  predicates_without_description: number;
  classes_without_description: number;
  duplicate_predicate_groups: number;
  unused_resources: number;
  unlabeled_resources: number;
  papers_total: number;
  templates_total: number;
  open_comments: number;
  built_at: string;
}

export interface EntityItem {
  id: string;
  label: string | null;
  url: string;
}

export interface Listing {
  total: number;
  items: EntityItem[];
}

export interface DuplicateGroup {
  normalized_label: string;
  size: number;
  members: string[];
  member_labels: (string | null)[];
  member_urls: string[];
  members_without_description: string[];
}

export interface DuplicateListing {
  total: number;
  items: DuplicateGroup[];
}

export interface Task1 {
  candidate: EntityItem;
  group: DuplicateGroup;
}

export interface FieldPapers {
  field: string;
  count: number;
  total: number;
  items: EntityItem[];
}

export interface PaperCount extends EntityItem {
  statements: number;
}

export interface PaperCounts {
  total: number;
  items: PaperCount[];
}

export interface EmptyCellReport {
  comparison_id: string;
  contributions: string[];
  properties: string[];
  empty_cells: [string, string][];
  empty_count: number;
  total_cells: number;
  labels: Record<string, string | null>;
}

export interface TemplatesOverview {
  templates: { id: string; label: string | null; created_at: string | null }[];
  monthly_counts: { month: string; count: number }[];
}

export interface VisitsGraph {
  nodes: string[];
  edges: { from: string; to: string; count: number }[];
}

export interface TopEdge {
  from: string;
  to: string;
  count: number;
}

export interface NextSteps {
  node: string;
  next: { page: string; count: number }[];
}

export interface PathsResult {
  total: number;
  items: { path: string[]; occurrences: number }[];
}

export interface Comment {
  id: number;
  target: string;
  type: string;
  text: string;
  author: string;
  created_at: string;
  status: "open" | "resolved";
}

export interface CommentListing {
  total: number;
  items: Comment[];
}

export interface DateRange {
  from: string | null;
  to: string | null;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

type Query = Record<string, string | number | null | undefined>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: typeof fetch = globalThis.fetch.bind(globalThis),
  ) {}

  buildUrl(path: string, query: Query = {}): string {
    const params = new URLSearchParams();
    for (const [key, value] of Object.entries(query)) {
      if (value !== null && value !== undefined && value !== "") {
        params.set(key, String(value));
      }
    }
    const qs = params.toString();
    return `${this.baseUrl}${path}${qs ? `?${qs}` : ""}`;
  }

  private async request<T>(
    method: string,
    path: string,
    query: Query = {},
    body?: unknown,
    signal?: AbortSignal,
  ): Promise<T> {
    const response = await this.fetchImpl(this.buildUrl(path, query), {
      method,
      signal,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      const code = typeof payload?.code === "string" ? payload.code : "error";
      const message = typeof payload?.message === "string" ? payload.message : response.statusText;
      throw new ApiError(response.status, code, message);
    }
    return payload as T;
  }

  private get<T>(path: string, query: Query = {}, signal?: AbortSignal): Promise<T> {
    return this.request<T>("GET", path, query, undefined, signal);
  }

  health(): Promise<{ status: string; entities: number; statements: number }> {
    return this.get("/api/health");
  }

  summary(): Promise<Summary> {
    return this.get("/api/metrics/summary");
  }

  predicatesUndescribed(limit?: number, offset?: number): Promise<Listing> {
    return this.get("/api/predicates/undescribed", { limit, offset });
  }

  classesUndescribed(limit?: number, offset?: number): Promise<Listing> {
    return this.get("/api/classes/undescribed", { limit, offset });
  }

  resourcesUnused(limit?: number, offset?: number): Promise<Listing> {
    return this.get("/api/resources/unused", { limit, offset });
  }

  resourcesUnlabeled(limit?: number, offset?: number): Promise<Listing> {
    return this.get("/api/resources/unlabeled", { limit, offset });
  }

  duplicates(): Promise<DuplicateListing> {
    return this.get("/api/predicates/duplicates");
  }

  task1(): Promise<Task1 | null> {
    return this.get("/api/predicates/duplicates/task1");
  }

  fieldPapers(fieldId: string): Promise<FieldPapers> {
    return this.get(`/api/fields/${encodeURIComponent(fieldId)}/papers`);
  }

  statementCounts(order: "asc" | "desc" = "asc"): Promise<PaperCounts> {
    return this.get("/api/papers/statement-counts", { order });
  }

  fewestPaper(): Promise<PaperCount | null> {
    return this.get("/api/papers/fewest");
  }

  emptyCells(comparisonId: string): Promise<EmptyCellReport> {
    return this.get(`/api/comparisons/${encodeURIComponent(comparisonId)}/empty-cells`);
  }

  templatesOverview(): Promise<TemplatesOverview> {
    return this.get("/api/templates/overview");
  }

  visitsGraph(range: DateRange, signal?: AbortSignal): Promise<VisitsGraph> {
    return this.get("/api/visits/graph", { from: range.from, to: range.to }, signal);
  }

  topEdge(range: DateRange, signal?: AbortSignal): Promise<TopEdge | null> {
    return this.get("/api/visits/top-edge", { from: range.from, to: range.to }, signal);
  }

  nextSteps(node: string, range: DateRange, signal?: AbortSignal): Promise<NextSteps> {
    return this.get("/api/visits/next", { node, from: range.from, to: range.to }, signal);
  }

  paths(
    minLen: number,
    topK: number,
    range: DateRange,
    signal?: AbortSignal,
  ): Promise<PathsResult> {
    return this.get(
      "/api/visits/paths",
      { min_len: minLen, top_k: topK, from: range.from, to: range.to },
      signal,
    );
  }

  comments(filters: {
    target?: string;
    status?: string;
    type?: string;
  } = {}): Promise<CommentListing> {
    return this.get("/api/comments", filters);
  }

  createComment(body: {
    target: string;
    type: string;
    text: string;
    author: string;
  }): Promise<Comment> {
    return this.request("POST", "/api/comments", {}, body);
  }

  setCommentStatus(id: number, status: "open" | "resolved"): Promise<Comment> {
    return this.request("PATCH", `/api/comments/${id}`, {}, { status });
  }
}
