// Typed client for the scirank service. All ranking happens server-side; this
// module only moves JSON. A shared AbortController keeps at most one search
// round-trip in flight: starting a new one cancels the previous.

import type {
  CentralityResponse,
  RecommendResponse,
  SearchRequest,
  SearchResponse,
  ZonesResponse,
} from './types.js';

export class ApiError extends Error {
  constructor(message: string, readonly status?: number) {
    super(message);
  }
}

export class ApiClient {
  private inflight: AbortController | null = null;

  constructor(readonly baseUrl: string = '') {}

  private async request<T>(path: string, init: RequestInit, signal?: AbortSignal): Promise<T> {
    let response: Response;
    try {
      response = await fetch(`${this.baseUrl}${path}`, { ...init, signal });
    } catch (err) {
      if ((err as Error).name === 'AbortError') throw err;
      throw new ApiError(`service unreachable: ${(err as Error).message}`);
    }
    if (!response.ok) {
      let detail = `${response.status}`;
      try {
        detail = JSON.stringify(await response.json());
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(`request failed (${response.status}): ${detail}`, response.status);
    }
    return (await response.json()) as T;
  }

  /** Cancel whatever search bundle is still running. */
  cancel(): void {
    if (this.inflight) {
      this.inflight.abort();
      this.inflight = null;
    }
  }

  /**
   * One search round-trip: ranked results plus the facet panels and the term
   * cloud for the same query. Newer calls abort older ones.
   */
  async searchBundle(request: SearchRequest, recommendK = 10): Promise<{
    search: SearchResponse;
    zones: ZonesResponse;
    centrality: CentralityResponse;
    recommendations: RecommendResponse;
  }> {
    this.cancel();
    const controller = new AbortController();
    this.inflight = controller;
    const q = encodeURIComponent(request.query);
    try {
      const [search, zones, centrality, recommendations] = await Promise.all([
        this.request<SearchResponse>(
          '/v1/search',
          {
            method: 'POST',
            headers: { 'Content-Type': 'application/json' },
            body: JSON.stringify(request),
          },
          controller.signal,
        ),
        this.request<ZonesResponse>(`/v1/journals/zones?q=${q}`, {}, controller.signal),
        this.request<CentralityResponse>(`/v1/authors/centrality?q=${q}`, {}, controller.signal),
        this.request<RecommendResponse>(
          `/v1/terms/recommend?q=${q}&k=${recommendK}`,
          {},
          controller.signal,
        ),
      ]);
      return { search, zones, centrality, recommendations };
    } finally {
      if (this.inflight === controller) this.inflight = null;
    }
  }
}
