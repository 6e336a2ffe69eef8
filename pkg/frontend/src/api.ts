import type {
  DecisionLabel,
  EntryView,
  PublishersResponse,
  QueueResponse,
  StatsResponse,
} from "./types.js";

/** Error raised for any failed API call. status 0 means the fetch itself
 * failed (network down, service not started). */
export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin client over the review service. All data the UI shows comes
 * through here; nothing is fabricated client-side. */
export class ApiClient {
  private readonly fetchImpl: FetchLike;

  constructor(
    private readonly base: string = "",
    fetchImpl?: FetchLike,
  ) {
    // bind: a bare reference to window.fetch loses its receiver
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  getQueue(limit?: number): Promise<QueueResponse> {
    const suffix = limit === undefined ? "" : `?limit=${limit}`;
    return this.request<QueueResponse>(`/api/queue${suffix}`);
  }

  getEntry(entryId: string): Promise<EntryView> {
    return this.request<EntryView>(`/api/entries/${encodeURIComponent(entryId)}`);
  }

  postDecision(entryId: string, label: DecisionLabel, reviewer: string): Promise<EntryView> {
    return this.request<EntryView>("/api/decisions", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ entry_id: entryId, label, reviewer }),
    });
  }

  getStats(window?: { from: string; to: string }): Promise<StatsResponse> {
    const suffix = window ? `?from=${window.from}&to=${window.to}` : "";
    return this.request<StatsResponse>(`/api/stats${suffix}`);
  }

  getPublishers(top?: number): Promise<PublishersResponse> {
    const suffix = top === undefined ? "" : `?top=${top}`;
    return this.request<PublishersResponse>(`/api/publishers${suffix}`);
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.base + path, init);
    } catch (err) {
      throw new ApiError(0, "network", err instanceof Error ? err.message : String(err));
    }
    const text = await response.text();
    let body: unknown = null;
    if (text) {
      try {
        body = JSON.parse(text);
      } catch {
        body = null;
      }
    }
    if (!response.ok) {
      const shaped = body as { error?: string; message?: string } | null;
      throw new ApiError(
        response.status,
        shaped?.error ?? "http_error",
        shaped?.message ?? `HTTP ${response.status}`,
      );
    }
    return body as T;
  }
}
