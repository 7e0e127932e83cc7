// Wire types of the reconciliation HTTP API.

export type LabelValue = "in" | "out" | "undec";

export interface StepInfo {
  label: string;
  curator: string;
  position: number;
  op: string;
  args: unknown[];
  text: string;
  shape: string;
}

export interface GraphPayload {
  arguments: string[];
  attacks: [string, string][];
  order_edges: [string, string][];
  grounded: Record<string, LabelValue>;
  steps: StepInfo[];
  curators: string[];
  stable_count: number;
  stable_count_exact: boolean;
  has_dataset: boolean;
  selected_index: number | null;
}

export interface StableItem {
  index: number;
  labeling: Record<string, LabelValue>;
  accepted: string[];
}

export interface StablePage {
  total: number;
  exact: boolean;
  page: number;
  page_size: number;
  items: StableItem[];
}

export interface MergedStepPayload {
  label: string;
  op: string;
  args: unknown[];
  curator: string;
  source_label: string;
}

export interface MergedPayload {
  curator: string;
  steps: MergedStepPayload[];
  dependencies: [string, string, string][];
}

export interface SelectResponse {
  index: number;
  merged: MergedPayload;
}

export interface ResultRow {
  row_id: number;
  values: (string | number | null)[];
}

export interface ResultPayload {
  columns: string[];
  rows: ResultRow[];
  csv: string;
  log: { label: string; status: string; warnings: string[] }[];
}

export interface SessionCreated {
  id: string;
  arguments: string[];
  stable_count: number;
  stable_count_exact: boolean;
}
