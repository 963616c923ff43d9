/** Client view state. The date range is validated before any fetch is
 * issued; an invalid range never leaves the form. */

import type { DateRange } from "./api.js";

export const PAGES = [
  "summary",
  "duplicates",
  "resources",
  "visitors",
  "papers",
  "comparisons",
  "templates",
  "comments",
] as const;

export type Page = (typeof PAGES)[number];

export function isPage(value: string): value is Page {
  return (PAGES as readonly string[]).includes(value);
}

export function isValidRange(range: DateRange): boolean {
  if (range.from !== null && !isIsoDate(range.from)) return false;
  if (range.to !== null && !isIsoDate(range.to)) return false;
  if (range.from !== null && range.to !== null) return range.from <= range.to;
  return true;
}

function isIsoDate(value: string): boolean {
  return /^\d{4}-\d{2}-\d{2}$/.test(value);
}

export class ViewState {
  page: Page = "summary";
  range: DateRange = { from: null, to: null };
  selectedEntity: string | null = null;
  cursors: Record<string, number> = {};

  /** Returns false (and leaves state untouched) for an invalid range. */
  setRange(from: string | null, to: string | null): boolean {
    const next = { from: from || null, to: to || null };
    if (!isValidRange(next)) return false;
    this.range = next;
    return true;
  }

  cursor(listing: string): number {
    return this.cursors[listing] ?? 0;
  }

  setCursor(listing: string, offset: number): void {
    this.cursors[listing] = Math.max(0, offset);
  }
}
