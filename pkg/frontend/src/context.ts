import type { ApiClient } from "./api.js";
import type { Page, ViewState } from "./state.js";

export interface AppContext {
  api: ApiClient;
  state: ViewState;
  navigate(page: Page): Promise<void>;
  /** Register background work (event-handler fetches) so tests and the
   * router can await quiescence. */
  track<T>(work: Promise<T>): Promise<T>;
  /** Rendered-node cap for the visitor network. */
  maxGraphNodes: number;
}

export function isAbortError(err: unknown): boolean {
  return err instanceof Error && err.name === "AbortError";
}
