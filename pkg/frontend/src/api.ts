/** Thin typed client for the review service; no UI logic lives here. */

import type {
  CandidatesResponse,
  DecisionBody,
  DecisionRecord,
  UnlinkedResponse,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ReviewApi {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(0, `service unreachable: ${String(err)}`);
    }
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      throw new ApiError(response.status, (body as { error?: string }).error ?? response.statusText);
    }
    return body as T;
  }

  fetchUnlinked(limit: number): Promise<UnlinkedResponse> {
    return this.request(`/synsets/unlinked?limit=${limit}`);
  }

  fetchCandidates(sourceId: string, n: number): Promise<CandidatesResponse> {
    return this.request(`/candidates/${encodeURIComponent(sourceId)}?n=${n}`);
  }

  postDecision(body: DecisionBody): Promise<DecisionRecord> {
    return this.request("/decisions", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  retrain(): Promise<{ model_version: string }> {
    return this.request("/retrain", { method: "POST" });
  }
}
