/**
 * Typed client for the ontorich HTTP API.
 *
 * Every response body carries a `revision`; the client remembers the last
 * one it saw and attaches it to every mutating request so the server can
 * reject writes based on stale state (HTTP 409). The transport is
 * injectable so tests can replay recorded responses.
 */

export interface ApiResponse {
  status: number;
  body: any;
}

export type Fetcher = (
  method: string,
  path: string,
  body?: unknown,
) => Promise<ApiResponse>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public errorName: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export class StaleRevisionError extends ApiError {
  constructor(
    public supplied: number,
    public current: number,
  ) {
    super(409, "StaleRevision", `revision ${supplied} is stale (current ${current})`);
    this.name = "StaleRevisionError";
  }
}

export interface TreeNode {
  iri: string;
  label: string;
  children: TreeNode[];
}

export interface Candidate {
  id: string;
  kind: string;
  surface: string;
  concept: string | null;
  rule: string;
  status: string;
}

export interface HistoryPoint {
  timestamp: number;
  value: number | null;
}

export interface MetricReport {
  report: Record<string, unknown>;
  revision: number;
}

export function browserFetcher(baseUrl: string): Fetcher {
  return async (method, path, body) => {
    const resp = await fetch(baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    return { status: resp.status, body: await resp.json() };
  };
}

export class ApiClient {
  /** Last revision observed in any response; null before the first call. */
  revision: number | null = null;

  constructor(private fetcher: Fetcher) {}

  private async call(method: string, path: string, body?: unknown): Promise<any> {
    const resp = await this.fetcher(method, path, body);
    const data = resp.body ?? {};
    if (typeof data.revision === "number") {
      this.revision = data.revision;
    }
    if (resp.status === 409) {
      throw new StaleRevisionError(data.supplied, data.current);
    }
    if (resp.status >= 400) {
      throw new ApiError(resp.status, data.error ?? "Error", data.message ?? "request failed");
    }
    return data;
  }

  /** Body sent with mutations: the last revision we read, if any. */
  private mutationBody(extra: Record<string, unknown> = {}): Record<string, unknown> {
    return this.revision === null ? extra : { revision: this.revision, ...extra };
  }

  getTree(): Promise<{ roots: TreeNode[]; revision: number }> {
    return this.call("GET", "/ontology/tree");
  }

  getMetrics(): Promise<MetricReport> {
    return this.call("GET", "/metrics");
  }

  getHistory(metric: string): Promise<{ metric: string; points: HistoryPoint[]; revision: number }> {
    return this.call("GET", `/metrics/history?metric=${encodeURIComponent(metric)}`);
  }

  listCandidates(status?: string): Promise<{ candidates: Candidate[]; revision: number }> {
    const query = status ? `?status=${encodeURIComponent(status)}` : "";
    return this.call("GET", `/candidates${query}`);
  }

  acceptCandidate(id: string): Promise<{ candidate: Candidate; revision: number }> {
    return this.call("POST", `/candidates/${id}/accept`, this.mutationBody());
  }

  rejectCandidate(id: string): Promise<{ candidate: Candidate; revision: number }> {
    return this.call("POST", `/candidates/${id}/reject`, this.mutationBody());
  }

  getHyponyms(lemma: string, depth: number): Promise<any> {
    return this.call(
      "GET",
      `/lexicon/hyponyms?lemma=${encodeURIComponent(lemma)}&depth=${depth}`,
    );
  }
}
