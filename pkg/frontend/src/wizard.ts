// Session wizard: collect two or more recipe files plus an optional
// CSV, create the session, surface errors inline.

import { ApiClient, ApiError } from "./api";
import type { SessionCreated } from "./types";

export interface WizardResult {
  created: SessionCreated;
  csvText: string | null;
}

async function readFile(file: File): Promise<string> {
  return await file.text();
}

export function mountWizard(
  container: HTMLElement,
  api: ApiClient,
  onReady: (result: WizardResult) => void,
): void {
  container.innerHTML = `
    <form class="wizard">
      <label>Recipes (two or more JSON files)
        <input type="file" name="recipes" accept=".json" multiple required>
      </label>
      <label>Dataset (CSV, optional)
        <input type="file" name="csv" accept=".csv">
      </label>
      <button type="submit">Start reconciliation</button>
      <p class="wizard-error" role="alert" hidden></p>
    </form>`;
  const form = container.querySelector("form")!;
  const errorEl = container.querySelector<HTMLParagraphElement>(".wizard-error")!;

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void (async () => {
      errorEl.hidden = true;
      const recipeInput = form.querySelector<HTMLInputElement>('input[name="recipes"]')!;
      const csvInput = form.querySelector<HTMLInputElement>('input[name="csv"]')!;
      const recipeFiles = Array.from(recipeInput.files ?? []);
      if (recipeFiles.length < 2) {
        errorEl.textContent = "Select at least two recipe files.";
        errorEl.hidden = false;
        return;
      }
      try {
        const recipes = await Promise.all(recipeFiles.map(readFile));
        const csvFile = csvInput.files?.[0] ?? null;
        const csvText = csvFile ? await readFile(csvFile) : null;
        const created = await api.createSession(recipes, csvText);
        onReady({ created, csvText });
      } catch (error) {
        errorEl.textContent =
          error instanceof ApiError ? error.message : `Upload failed: ${String(error)}`;
        errorEl.hidden = false;
      }
    })();
  });
}
