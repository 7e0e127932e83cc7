// Two-lane timeline: each curator's steps in recipe order, colored by
// the active labeling.

import type { NodeView } from "./labelview";
import { timelineLanes } from "./labelview";
import type { GraphPayload } from "./types";

export function renderTimeline(
  container: HTMLElement,
  graph: GraphPayload,
  views: NodeView[],
): void {
  const byLabel = new Map(views.map((view) => [view.label, view]));
  container.innerHTML = "";
  for (const lane of timelineLanes(graph)) {
    const row = document.createElement("div");
    row.className = "timeline-lane";
    const name = document.createElement("span");
    name.className = "lane-name";
    name.textContent = lane.curator;
    row.appendChild(name);
    for (const step of lane.steps) {
      const view = byLabel.get(step.label);
      const chip = document.createElement("span");
      chip.className = "timeline-chip";
      chip.style.background = view?.color ?? "#ddd";
      chip.textContent = `${step.label}${view?.glyph ?? ""}`;
      chip.title = step.text;
      row.appendChild(chip);
      const arrow = document.createElement("span");
      arrow.className = "lane-arrow";
      arrow.textContent = "⇢";
      row.appendChild(arrow);
    }
    row.removeChild(row.lastChild!); // drop the trailing arrow
    container.appendChild(row);
  }
}
