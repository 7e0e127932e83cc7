import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api";

function fakeFetch(status: number, body: unknown) {
  const calls: { url: string; init?: RequestInit }[] = [];
  const impl = async (url: string, init?: RequestInit) => {
    calls.push({ url, init });
    return new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });
  };
  return { impl, calls };
}

describe("ApiClient", () => {
  it("posts recipes and csv to /sessions", async () => {
    const { impl, calls } = fakeFetch(201, { id: "s1", arguments: [], stable_count: 0, stable_count_exact: true });
    const api = new ApiClient("", impl);
    await api.createSession(["{}", "{}"], "A,B\n1,2\n");
    expect(calls[0].url).toBe("/sessions");
    expect(calls[0].init?.method).toBe("POST");
    const sent = JSON.parse(String(calls[0].init?.body));
    expect(sent.recipes).toHaveLength(2);
    expect(sent.csv).toContain("A,B");
  });

  it("pages stable labelings with query parameters", async () => {
    const { impl, calls } = fakeFetch(200, { total: 0, exact: true, page: 2, page_size: 50, items: [] });
    await new ApiClient("", impl).stable("s1", 2, 50);
    expect(calls[0].url).toBe("/sessions/s1/stable?page=2&page_size=50");
  });

  it("selects by index", async () => {
    const { impl, calls } = fakeFetch(200, { index: 6, merged: { curator: "merged", steps: [], dependencies: [] } });
    const response = await new ApiClient("", impl).select("s1", 6);
    expect(response.index).toBe(6);
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({ index: 6 });
  });

  it("raises ApiError with the server detail", async () => {
    const { impl } = fakeFetch(409, { detail: "unresolved conflicts: E, F" });
    await expect(new ApiClient("", impl).result("s1")).rejects.toThrowError(ApiError);
    await expect(new ApiClient("", impl).result("s1")).rejects.toThrow("unresolved conflicts");
  });

  it("builds the csv download url", () => {
    expect(new ApiClient("").resultCsvUrl("abc")).toBe("/sessions/abc/result.csv");
  });
});
