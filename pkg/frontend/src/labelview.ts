// Pure view-model logic: node colors, glyphs, labeling diffs, paging,
// and the per-curator timeline layout.  Kept DOM-free so it is unit
// testable; rendering modules consume these values.

import type { GraphPayload, LabelValue, StepInfo } from "./types";

// grounded decisions use the strong colors, choices made by the
// selected stable labeling use the light variants
export const COLORS = {
  in: "#4169E1",
  out: "#FF8C00",
  undec: "#F0CC00",
  newlyIn: "#9BDFFB",
  newlyOut: "#FFC380",
} as const;

export const GLYPHS: Record<LabelValue, string> = {
  in: "✓",
  out: "✗",
  undec: "?",
};

export interface NodeView {
  label: string;
  value: LabelValue;
  color: string;
  glyph: string;
  newlyDecided: boolean;
}

/** Color a single argument under the active labeling, highlighting
 * decisions the grounded labeling did not already make. */
export function nodeView(
  argument: string,
  grounded: Record<string, LabelValue>,
  active: Record<string, LabelValue>,
): NodeView {
  const value = active[argument];
  const groundedValue = grounded[argument];
  const newlyDecided = groundedValue === "undec" && value !== "undec";
  let color: string;
  if (value === "undec") {
    color = COLORS.undec;
  } else if (newlyDecided) {
    color = value === "in" ? COLORS.newlyIn : COLORS.newlyOut;
  } else {
    color = value === "in" ? COLORS.in : COLORS.out;
  }
  return { label: argument, value, color, glyph: GLYPHS[value], newlyDecided };
}

export function nodeViews(
  graph: GraphPayload,
  active: Record<string, LabelValue> | null,
): NodeView[] {
  const labeling = active ?? graph.grounded;
  return [...graph.arguments]
    .sort()
    .map((argument) => nodeView(argument, graph.grounded, labeling));
}

export function colorCounts(views: NodeView[]): Record<string, number> {
  const counts: Record<string, number> = {};
  for (const view of views) counts[view.color] = (counts[view.color] ?? 0) + 1;
  return counts;
}

/** Arguments whose color differs between two labelings; the extension
 * browser recolors exactly the grounded-undecided ones. */
export function recoloredArguments(
  graph: GraphPayload,
  a: Record<string, LabelValue>,
  b: Record<string, LabelValue>,
): string[] {
  return graph.arguments.filter((argument) => a[argument] !== b[argument]).sort();
}

// ------------------------------------------------------------- paging

export interface PagerState {
  page: number; // 0-based, one stable labeling per page
  total: number;
}

export function pageCount(state: PagerState): number {
  return state.total;
}

export function clampPage(state: PagerState, page: number): number {
  if (state.total === 0) return 0;
  return Math.min(Math.max(page, 0), state.total - 1);
}

export function pagerCaption(state: PagerState): string {
  if (state.total === 0) return "no stable labelings";
  return `labeling ${state.page + 1} of ${state.total}`;
}

// ------------------------------------------------------------- timeline

export interface TimelineLane {
  curator: string;
  steps: StepInfo[];
}

/** One lane per curator, steps in recipe order; used by the sequence tab. */
export function timelineLanes(graph: GraphPayload): TimelineLane[] {
  return graph.curators.map((curator) => ({
    curator,
    steps: graph.steps
      .filter((step) => step.curator === curator)
      .sort((a, b) => a.position - b.position),
  }));
}
