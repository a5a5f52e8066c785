// Thin client over the engine's HTTP API with cancellable in-flight
// requests.  The fetch implementation is injectable so contract tests
// can spy on the exact URLs and bodies the UI sends.

import type {
  DatasetMeta,
  DictionaryInfo,
  GroupingJob,
  JoinResponse,
  MatchDetail,
  PairsResponse,
  VulnerabilityProfile,
} from "./types";

export type FetchLike = (
  url: string,
  init?: RequestInit,
) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    detail: string,
  ) {
    super(detail);
  }
}

export class ApiClient {
  private controller: AbortController | null = null;

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  /** Abort whatever is in flight; called on every view-state change. */
  cancelActive(): void {
    this.controller?.abort();
    this.controller = null;
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    this.controller = new AbortController();
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      signal: this.controller.signal,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(
        response.status,
        payload.code ?? "HttpError",
        payload.detail ?? response.statusText,
      );
    }
    return payload as T;
  }

  getCorpus(filters: {
    tags?: string[];
    portals?: string[];
    granularity?: string;
  } = {}): Promise<DatasetMeta[]> {
    const params = new URLSearchParams();
    if (filters.tags?.length) params.set("tags", filters.tags.join(","));
    if (filters.portals?.length) params.set("portals", filters.portals.join(","));
    if (filters.granularity) params.set("granularity", filters.granularity);
    const query = params.toString();
    return this.request("GET", "/corpus" + (query ? `?${query}` : ""));
  }

  getDictionary(): Promise<DictionaryInfo> {
    return this.request("GET", "/dictionary");
  }

  putDictionary(attributes: string[]): Promise<DictionaryInfo> {
    return this.request("PUT", "/dictionary", { attributes });
  }

  postGrouping(body: {
    dataset_ids?: string[];
    weight_candidates?: number[];
    seed?: number;
  }): Promise<{ id: string; status: string }> {
    return this.request("POST", "/groupings", body);
  }

  getGrouping(id: string): Promise<GroupingJob> {
    return this.request("GET", `/groupings/${id}`);
  }

  async pollGrouping(
    id: string,
    intervalMs = 150,
    timeoutMs = 60_000,
  ): Promise<GroupingJob> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
      const job = await this.getGrouping(id);
      if (job.status !== "pending" && job.status !== "running") return job;
      if (Date.now() > deadline) throw new Error("grouping poll timed out");
      await new Promise((resolve) => setTimeout(resolve, intervalMs));
    }
  }

  getVulnerability(datasetId: string): Promise<VulnerabilityProfile> {
    return this.request("GET", `/datasets/${datasetId}/vulnerability`);
  }

  postPairs(datasetIds: string[]): Promise<PairsResponse> {
    return this.request("POST", "/pairs", { dataset_ids: datasetIds });
  }

  postJoin(a: string, b: string, key: string[]): Promise<JoinResponse> {
    return this.request("POST", "/join", { a, b, key });
  }

  getMatchDetail(joinId: string, index: number): Promise<MatchDetail> {
    return this.request("GET", `/join/${joinId}/match/${index}`);
  }
}
