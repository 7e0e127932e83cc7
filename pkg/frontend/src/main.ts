import "./style.css";

import { ApiClient, ApiError } from "./api";
import { GraphView } from "./graphView";
import { clampPage, nodeViews, pagerCaption } from "./labelview";
import { parseCsvPreview, renderMerged, renderResult } from "./resultView";
import { renderTimeline } from "./timeline";
import type { GraphPayload, StableItem } from "./types";
import { mountWizard } from "./wizard";

const api = new ApiClient("");

interface AppState {
  sessionId: string;
  graph: GraphPayload;
  stable: StableItem[];
  stableTotal: number;
  page: number; // current extension page; -1 shows the grounded labeling
  csvText: string | null;
}

let state: AppState | null = null;
let graphView: GraphView | null = null;

const el = (id: string) => document.getElementById(id)!;

function activeLabeling(s: AppState) {
  if (s.page < 0 || s.stable.length === 0) return null;
  return s.stable[s.page].labeling;
}

function refreshViews(): void {
  if (!state || !graphView) return;
  const views = nodeViews(state.graph, activeLabeling(state));
  graphView.recolor(views);
  renderTimeline(el("timeline"), state.graph, views);
  const pager = { page: Math.max(state.page, 0), total: state.stableTotal };
  el("pager-caption").textContent =
    state.page < 0 ? `grounded labeling (${state.stableTotal} stable pages)` : pagerCaption(pager);
  (el("confirm-selection") as HTMLButtonElement).disabled = state.page < 0;
}

function setPage(page: number): void {
  if (!state) return;
  state.page = page < 0 ? -1 : clampPage({ page, total: state.stableTotal }, page);
  refreshViews();
}

let selectionInFlight = false;

async function confirmSelection(): Promise<void> {
  if (!state || state.page < 0 || selectionInFlight) return;
  selectionInFlight = true;
  const confirmButton = el("confirm-selection") as HTMLButtonElement;
  confirmButton.disabled = true;
  const status = el("selection-status");
  status.textContent = "merging...";
  try {
    const selected = await api.select(state.sessionId, state.stable[state.page].index);
    renderMerged(el("merged"), selected.merged);
    status.textContent = `selection #${selected.index} confirmed`;
    if (state.graph.has_dataset) {
      const result = await api.result(state.sessionId);
      const original = state.csvText ? parseCsvPreview(state.csvText) : null;
      renderResult(el("result"), original, result, api.resultCsvUrl(state.sessionId));
    } else {
      el("result").textContent = "No dataset uploaded; merged recipe shown above.";
    }
  } catch (error) {
    status.textContent = error instanceof ApiError ? error.message : String(error);
  } finally {
    selectionInFlight = false;
    confirmButton.disabled = false;
  }
}

async function startSession(sessionId: string, csvText: string | null): Promise<void> {
  const graph = await api.graph(sessionId);
  const stablePages = [] as StableItem[];
  let page = 0;
  for (;;) {
    const chunk = await api.stable(sessionId, page, 200);
    stablePages.push(...chunk.items);
    if (stablePages.length >= chunk.total || chunk.items.length === 0) break;
    page += 1;
  }
  state = {
    sessionId,
    graph,
    stable: stablePages,
    stableTotal: stablePages.length,
    page: -1,
    csvText,
  };
  el("wizard").hidden = true;
  el("workspace").hidden = false;
  if (state.stableTotal === 0) {
    el("pager-caption").textContent =
      "no stable labelings exist; the conflicts cannot be fully resolved under stable semantics";
  }
  graphView = new GraphView(el("graph"));
  graphView.render(graph, nodeViews(graph, null));
  // conflict-free sessions are fully decided already; jump straight to
  // the single stable page so merging is one click away
  const undecided = Object.values(graph.grounded).some((value) => value === "undec");
  if (!undecided && state.stableTotal > 0) {
    state.page = 0;
  }
  refreshViews();
}

function wireTabs(): void {
  for (const button of document.querySelectorAll<HTMLButtonElement>(".tab-button")) {
    button.addEventListener("click", () => {
      for (const other of document.querySelectorAll<HTMLButtonElement>(".tab-button")) {
        other.classList.toggle("active", other === button);
      }
      for (const panel of document.querySelectorAll<HTMLElement>(".tab-panel")) {
        panel.hidden = panel.id !== button.dataset.target;
      }
    });
  }
}

function wirePager(): void {
  el("page-prev").addEventListener("click", () => setPage((state?.page ?? 0) - 1));
  el("page-next").addEventListener("click", () => setPage((state?.page ?? -1) + 1));
  el("page-grounded").addEventListener("click", () => setPage(-1));
  el("confirm-selection").addEventListener("click", () => void confirmSelection());
}

document.addEventListener("DOMContentLoaded", () => {
  wireTabs();
  wirePager();
  mountWizard(el("wizard"), api, ({ created, csvText }) => {
    void startSession(created.id, csvText);
  });
});
