import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

type Call = { url: string; init?: RequestInit };

function stubFetch(status: number, body: unknown, calls: Call[] = []) {
  const fetchFn = async (url: string, init?: RequestInit): Promise<Response> => {
    calls.push({ url, init });
    return {
      ok: status >= 200 && status < 300,
      status,
      json: async () => body,
    } as Response;
  };
  return { fetchFn, calls };
}

describe("ApiClient", () => {
  it("fetches the next task", async () => {
    const payload = {
      campaign_id: "c1",
      annotator_id: "a1",
      verse: null,
      atoms: [],
      base_revision: 0,
    };
    const { fetchFn, calls } = stubFetch(200, payload);
    const api = new ApiClient("http://host", fetchFn);
    expect(await api.nextTask("c1", "a1")).toEqual(payload);
    expect(calls[0]!.url).toBe("http://host/campaigns/c1/next?annotator=a1");
  });

  it("escapes path pieces", async () => {
    const { fetchFn, calls } = stubFetch(200, { findings: [] });
    const api = new ApiClient("http://host", fetchFn);
    await api.savedAlignment("GEN 9:20", "a/1");
    expect(calls[0]!.url).toBe("http://host/alignments/GEN%209%3A20/a%2F1");
  });

  it("turns error responses into ApiError with the detail text", async () => {
    const { fetchFn } = stubFetch(404, { detail: "not found: 'X'" });
    const api = new ApiClient("http://host", fetchFn);
    await expect(api.verse("X")).rejects.toThrow(ApiError);
    await expect(api.verse("X")).rejects.toThrow("not found: 'X'");
  });

  it("submit sends atoms with the base revision", async () => {
    const { fetchFn, calls } = stubFetch(200, { revision: 3, findings: [] });
    const api = new ApiClient("http://host", fetchFn);
    const result = await api.submit("V1", "a1", ["0-0", "1-∅"], 2);
    expect(result).toEqual({ ok: true, revision: 3, findings: [] });
    expect(JSON.parse(calls[0]!.init!.body as string)).toEqual({
      atoms: ["0-0", "1-∅"],
      base_revision: 2,
      override: false,
    });
  });

  it("submit returns conflicts as values", async () => {
    const { fetchFn } = stubFetch(409, { detail: "stale revision 1, current is 2" });
    const api = new ApiClient("http://host", fetchFn);
    const result = await api.submit("V1", "a1", [], 1);
    expect(result.ok).toBe(false);
    if (!result.ok) {
      expect(result.status).toBe(409);
      expect(result.detail).toContain("stale revision");
    }
  });

  it("submit surfaces gate findings from a 422", async () => {
    const finding = {
      rule_id: "R1_COMPLETENESS",
      severity: "error",
      tokens: [["source", 0]],
      message: "token 0 uncovered",
      guideline: "every token is linked or marked Not Translated",
    };
    const { fetchFn } = stubFetch(422, {
      detail: { message: "submission blocked", findings: [finding] },
    });
    const api = new ApiClient("http://host", fetchFn);
    const result = await api.submit("V1", "a1", [], 0);
    expect(result.ok).toBe(false);
    if (!result.ok) {
      expect(result.status).toBe(422);
      expect(result.findings).toEqual([finding]);
    }
  });

  it("lint unwraps the findings list", async () => {
    const { fetchFn, calls } = stubFetch(200, { findings: [] });
    const api = new ApiClient("http://host", fetchFn);
    expect(await api.lint("V1", ["0-0"])).toEqual([]);
    expect(JSON.parse(calls[0]!.init!.body as string)).toEqual({
      verse_id: "V1",
      atoms: ["0-0"],
    });
  });
});
