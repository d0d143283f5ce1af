/** Typed client for the alignment service HTTP API.
 *
 * This is the UI's only doorway to data: no file access, no shared state.
 * The fetch function is injectable so tests can run without a server.
 */

import { Side } from "./atoms.js";

export interface TokenPayload {
  index: number;
  surface: string;
  kind: "word" | "punctuation" | "expanded";
  start: number;
  end: number;
}

export interface VersePayload {
  id: string;
  source_lang: string;
  target_lang: string;
  source_raw: string;
  target_raw: string;
  source_tokens: TokenPayload[];
  target_tokens: TokenPayload[];
}

export interface Finding {
  rule_id: string;
  severity: "error" | "warning" | "info";
  tokens: [Side, number][];
  message: string;
  guideline: string;
}

export interface RuleInfo {
  rule_id: string;
  severity: string;
  guideline: string;
  text: string;
}

export interface TaskPayload {
  campaign_id: string;
  annotator_id: string;
  verse: VersePayload | null;
  atoms: string[];
  base_revision: number;
}

export type SubmitResult =
  | { ok: true; revision: number; findings: Finding[] }
  | { ok: false; status: number; detail: string; findings: Finding[] };

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

function detailText(body: unknown): string {
  if (body && typeof body === "object" && "detail" in body) {
    const detail = (body as { detail: unknown }).detail;
    if (typeof detail === "string") {
      return detail;
    }
    if (detail && typeof detail === "object" && "message" in detail) {
      return String((detail as { message: unknown }).message);
    }
    return JSON.stringify(detail);
  }
  return JSON.stringify(body);
}

export class ApiClient {
  constructor(
    private readonly base: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<unknown> {
    const response = await this.fetchFn(this.base + path, init);
    const body: unknown = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, detailText(body));
    }
    return body;
  }

  private post(path: string, payload: unknown, method = "POST"): Promise<unknown> {
    return this.request(path, {
      method,
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  health(): Promise<{ ok: boolean; verses: number }> {
    return this.request("/health") as Promise<{ ok: boolean; verses: number }>;
  }

  rules(): Promise<RuleInfo[]> {
    return this.request("/rules") as Promise<RuleInfo[]>;
  }

  verse(id: string): Promise<VersePayload> {
    return this.request(`/verses/${encodeURIComponent(id)}`) as Promise<VersePayload>;
  }

  nextTask(campaignId: string, annotator: string): Promise<TaskPayload> {
    const query = `annotator=${encodeURIComponent(annotator)}`;
    return this.request(
      `/campaigns/${encodeURIComponent(campaignId)}/next?${query}`,
    ) as Promise<TaskPayload>;
  }

  lint(verseId: string, atoms: string[]): Promise<Finding[]> {
    return this.post("/lint", { verse_id: verseId, atoms }).then(
      (body) => (body as { findings: Finding[] }).findings,
    );
  }

  /** Submit an alignment.  Gate failures (422) and stale revisions (409)
   * come back as values, not exceptions, so the UI can react inline. */
  async submit(
    verseId: string,
    annotator: string,
    atoms: string[],
    baseRevision: number,
    override = false,
  ): Promise<SubmitResult> {
    const path = `/alignments/${encodeURIComponent(verseId)}/${encodeURIComponent(annotator)}`;
    const response = await this.fetchFn(this.base + path, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ atoms, base_revision: baseRevision, override }),
    });
    const body: unknown = await response.json();
    if (response.ok) {
      const ok = body as { revision: number; findings: Finding[] };
      return { ok: true, revision: ok.revision, findings: ok.findings };
    }
    const detail = (body as { detail: unknown }).detail;
    const findings =
      detail && typeof detail === "object" && "findings" in detail
        ? ((detail as { findings: Finding[] }).findings ?? [])
        : [];
    return { ok: false, status: response.status, detail: detailText(body), findings };
  }

  savedAlignment(
    verseId: string,
    annotator: string,
  ): Promise<{ atoms: string[]; revision: number; findings: Finding[] }> {
    const path = `/alignments/${encodeURIComponent(verseId)}/${encodeURIComponent(annotator)}`;
    return this.request(path) as Promise<{
      atoms: string[];
      revision: number;
      findings: Finding[];
    }>;
  }
}
