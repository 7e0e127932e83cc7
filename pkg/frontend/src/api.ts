// Thin client for the reconciliation API.  All solving and merging
// happens server-side; the UI never derives its own labelings.

import type {
  GraphPayload,
  ResultPayload,
  SelectResponse,
  SessionCreated,
  StablePage,
} from "./types";

export class ApiError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.base + path, init);
    if (!response.ok) {
      let detail = `${response.status} ${response.statusText}`;
      try {
        const body = await response.json();
        if (typeof body.detail === "string") detail = body.detail;
      } catch {
        // non-JSON error body; keep the status line
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  createSession(recipes: unknown[], csv: string | null): Promise<SessionCreated> {
    return this.request("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ recipes, csv }),
    });
  }

  graph(sessionId: string): Promise<GraphPayload> {
    return this.request(`/sessions/${sessionId}/graph`);
  }

  stable(sessionId: string, page = 0, pageSize = 100): Promise<StablePage> {
    return this.request(`/sessions/${sessionId}/stable?page=${page}&page_size=${pageSize}`);
  }

  select(sessionId: string, index: number): Promise<SelectResponse> {
    return this.request(`/sessions/${sessionId}/select`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ index }),
    });
  }

  result(sessionId: string): Promise<ResultPayload> {
    return this.request(`/sessions/${sessionId}/result`);
  }

  resultCsvUrl(sessionId: string): string {
    return `${this.base}/sessions/${sessionId}/result.csv`;
  }
}
