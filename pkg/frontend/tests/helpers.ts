// Shared test plumbing: a recording stub for fetch and graph fixtures.

import type { ContextGraphDto, GraphNodeDto } from "../src/types.js";

export interface RecordedCall {
  method: string;
  url: URL;
  headers: Record<string, string>;
  body: unknown;
}

type Responder = (call: RecordedCall) => { status?: number; json: unknown } | undefined;

/** Routes requests by method + pathname; records everything it sees. */
export class StubFetch {
  calls: RecordedCall[] = [];
  private routes: Array<{ method: string; path: string; respond: Responder }> = [];

  on(method: string, path: string, respond: Responder): this;
  on(method: string, path: string, respond: unknown): this;
  on(method: string, path: string, respond: Responder | unknown): this {
    const fn: Responder =
      typeof respond === "function" ? (respond as Responder) : () => ({ json: respond });
    this.routes.push({ method: method.toUpperCase(), path, respond: fn });
    return this;
  }

  callsTo(method: string, path: string): RecordedCall[] {
    return this.calls.filter(
      (c) => c.method === method.toUpperCase() && c.url.pathname === path,
    );
  }

  fetch = async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
    const url = new URL(String(input));
    const method = (init?.method ?? "GET").toUpperCase();
    const headers = Object.fromEntries(
      Object.entries((init?.headers as Record<string, string>) ?? {}),
    );
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    const call: RecordedCall = { method, url, headers, body };
    this.calls.push(call);
    for (const route of this.routes) {
      if (route.method === method && route.path === url.pathname) {
        const out = route.respond(call);
        if (out !== undefined) {
          return new Response(JSON.stringify(out.json), {
            status: out.status ?? 200,
            headers: { "content-type": "application/json" },
          });
        }
      }
    }
    return new Response(
      JSON.stringify({ code: "not_found", message: `no stub for ${method} ${url.pathname}` }),
      { status: 404, headers: { "content-type": "application/json" } },
    );
  };
}

export function node(
  kind: "tag" | "resource",
  id: string,
  locality: "local" | "global",
  extra: Partial<GraphNodeDto> = {},
): GraphNodeDto {
  return {
    kind,
    id,
    locality,
    weight: 1,
    title: null,
    is_center: false,
    ...extra,
  };
}

/** A small two-ring graph with every kind/locality combination present. */
export function sampleGraph(): ContextGraphDto {
  return {
    centers: [{ kind: "tag", id: "tech" }],
    nodes: [
      node("tag", "tech", "local", { is_center: true, weight: 3 }),
      node("resource", "http://a.example/", "local", { title: "Site A", weight: 2 }),
      node("resource", "http://d.example/", "global", { weight: 2 }),
      node("tag", "news", "global", { weight: 1 }),
    ],
    edges: [
      [0, 1],
      [0, 2],
      [3, 2],
    ],
  };
}

export function cloudOf(...labels: string[]) {
  return labels.map((label, i) => ({ label, count: i + 1, size: 12 + i }));
}
