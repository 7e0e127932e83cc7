// Merged-recipe listing and data tables (original next to result).

import type { MergedPayload, ResultPayload } from "./types";

export function renderMerged(container: HTMLElement, merged: MergedPayload): void {
  container.innerHTML = "";
  const heading = document.createElement("h3");
  heading.textContent = `Merged recipe (${merged.steps.length} steps)`;
  container.appendChild(heading);
  const list = document.createElement("ol");
  list.className = "merged-steps";
  for (const step of merged.steps) {
    const item = document.createElement("li");
    const op = `${step.op}(${step.args.map((a) => JSON.stringify(a)).join(", ")})`;
    item.textContent = `${step.label}  ${op}  [${step.curator}]`;
    list.appendChild(item);
  }
  container.appendChild(list);
}

export function renderTable(
  container: HTMLElement,
  caption: string,
  columns: string[],
  rows: (string | number | null)[][],
): void {
  const table = document.createElement("table");
  table.className = "data-table";
  const captionEl = document.createElement("caption");
  captionEl.textContent = caption;
  table.appendChild(captionEl);
  const head = table.createTHead().insertRow();
  for (const column of columns) {
    const cell = document.createElement("th");
    cell.textContent = column;
    head.appendChild(cell);
  }
  const body = table.createTBody();
  for (const row of rows) {
    const tr = body.insertRow();
    for (const value of row) {
      const td = tr.insertCell();
      td.textContent = value === null ? "" : String(value);
      if (typeof value === "number") td.className = "numeric";
    }
  }
  container.appendChild(table);
}

export function renderResult(
  container: HTMLElement,
  original: { columns: string[]; rows: (string | null)[][] } | null,
  result: ResultPayload,
  downloadUrl: string,
): void {
  container.innerHTML = "";
  const wrap = document.createElement("div");
  wrap.className = "tables-side-by-side";
  if (original) {
    const left = document.createElement("div");
    renderTable(left, "Original", original.columns, original.rows);
    wrap.appendChild(left);
  }
  const right = document.createElement("div");
  renderTable(
    right,
    "After merged recipe",
    result.columns,
    result.rows.map((row) => row.values),
  );
  wrap.appendChild(right);
  container.appendChild(wrap);

  const link = document.createElement("a");
  link.href = downloadUrl;
  link.textContent = "Download CSV";
  link.className = "download-link";
  container.appendChild(link);
}

/** Minimal CSV parsing for previewing the uploaded file client-side. */
export function parseCsvPreview(text: string): { columns: string[]; rows: (string | null)[][] } {
  const rows: string[][] = [];
  let field = "";
  let row: string[] = [];
  let inQuotes = false;
  for (let i = 0; i < text.length; i += 1) {
    const ch = text[i];
    if (inQuotes) {
      if (ch === '"' && text[i + 1] === '"') {
        field += '"';
        i += 1;
      } else if (ch === '"') {
        inQuotes = false;
      } else {
        field += ch;
      }
    } else if (ch === '"') {
      inQuotes = true;
    } else if (ch === ",") {
      row.push(field);
      field = "";
    } else if (ch === "\n" || ch === "\r") {
      if (ch === "\r" && text[i + 1] === "\n") i += 1;
      row.push(field);
      rows.push(row);
      field = "";
      row = [];
    } else {
      field += ch;
    }
  }
  if (field !== "" || row.length) {
    row.push(field);
    rows.push(row);
  }
  const [header = [], ...body] = rows;
  return {
    columns: header,
    rows: body.map((r) => r.map((value) => (value === "" ? null : value))),
  };
}
