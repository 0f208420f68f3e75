// Typed client for the bookmark manager HTTP API.
//
// The fetch implementation is injected so tests can stub the network and
// the same client runs in the browser and under node.

import type {
  ClickEventDto,
  ContextGraphDto,
  FilterQuery,
  ResourceRowDto,
  ScoredResourceDto,
  ScoredTagDto,
  SizedTagDto,
  StatsDto,
  TripleDto,
  ViewName,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type Query = Record<string, string | number | boolean | string[] | undefined>;

export class ApiClient {
  private fetchFn: typeof fetch;

  constructor(
    private base: string,
    public user: string | null,
    fetchFn?: typeof fetch,
  ) {
    if (!this.base.endsWith("/")) this.base += "/";
    // wrap the global so the browser's fetch keeps its expected `this`
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(
    method: string,
    path: string,
    query?: Query,
    body?: unknown,
  ): Promise<T> {
    const params = new URLSearchParams();
    for (const [key, value] of Object.entries(query ?? {})) {
      if (value === undefined) continue;
      if (Array.isArray(value)) {
        for (const item of value) params.append(key, item);
      } else {
        params.append(key, String(value));
      }
    }
    const qs = params.toString();
    const url = this.base + path + (qs ? `?${qs}` : "");
    const headers: Record<string, string> = {};
    if (this.user) headers["X-User"] = this.user;
    if (body !== undefined) headers["Content-Type"] = "application/json";
    const resp = await this.fetchFn(url, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!resp.ok) {
      let code = "http_error";
      let message = `${resp.status} ${resp.statusText}`;
      try {
        const payload = await resp.json();
        if (payload && payload.code) {
          code = payload.code;
          message = payload.message ?? message;
        }
      } catch {
        // non-JSON error body; keep the generic message
      }
      throw new ApiError(resp.status, code, message);
    }
    return (await resp.json()) as T;
  }

  // -- annotation management ------------------------------------------------

  addAnnotation(
    url: string,
    tags: string[],
    title?: string,
  ): Promise<{ created: TripleDto[] }> {
    return this.request("POST", "api/annotations", undefined, { url, tags, title });
  }

  deleteResource(url: string): Promise<{ removed: number }> {
    return this.request("DELETE", "api/resources", { url });
  }

  setTags(url: string, tags: string[]): Promise<{ added: string[]; removed: string[] }> {
    return this.request("PUT", "api/resources/tags", undefined, { url, tags });
  }

  setTitle(url: string, title: string): Promise<{ ok: boolean }> {
    return this.request("PUT", "api/resources/title", undefined, { url, title });
  }

  renameTag(old: string, next: string): Promise<{ renamed: number }> {
    return this.request("POST", "api/tags/rename", undefined, { old, new: next });
  }

  // -- browsing ---------------------------------------------------------------

  async cloud(scope: "personal" | "global", max?: number): Promise<SizedTagDto[]> {
    const body = await this.request<{ tags: SizedTagDto[] }>("GET", "api/cloud", {
      scope,
      max,
    });
    return body.tags;
  }

  context(
    centers: string[],
    view: ViewName,
    filter: FilterQuery = {},
  ): Promise<ContextGraphDto> {
    return this.request("GET", "api/context", {
      centers,
      view,
      depth: filter.depth,
      max_neighbors: filter.maxNeighbors,
      max_nodes: filter.maxNodes,
      extra_tags: filter.extraTags,
    });
  }

  async resources(
    tags: string[],
    scope: "personal" | "global",
    conjunctive = false,
  ): Promise<ResourceRowDto[]> {
    const body = await this.request<{ resources: ResourceRowDto[] }>(
      "GET",
      "api/resources",
      { tags, scope, conjunctive },
    );
    return body.resources;
  }

  // -- similarity ---------------------------------------------------------------

  async recommend(url: string, k = 10): Promise<ScoredTagDto[]> {
    const body = await this.request<{ tags: ScoredTagDto[] }>("GET", "api/recommend", {
      url,
      k,
    });
    return body.tags;
  }

  async relatedTags(tag: string, k = 10): Promise<ScoredTagDto[]> {
    const body = await this.request<{ tags: ScoredTagDto[] }>(
      "GET",
      "api/related_tags",
      { tag, k },
    );
    return body.tags;
  }

  async similar(url: string, k = 10): Promise<ScoredResourceDto[]> {
    const body = await this.request<{ resources: ScoredResourceDto[] }>(
      "GET",
      "api/similar",
      { url, k },
    );
    return body.resources;
  }

  // -- analytics -----------------------------------------------------------------

  postEvents(events: ClickEventDto[]): Promise<{ recorded: number }> {
    return this.request("POST", "api/events", undefined, events);
  }

  stats(gap?: number): Promise<StatsDto> {
    return this.request("GET", "api/stats", { gap });
  }
}
