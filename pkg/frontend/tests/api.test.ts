import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { StubFetch } from "./helpers.js";

function client(stub: StubFetch, user: string | null = "maya"): ApiClient {
  return new ApiClient("http://h.test/", user, stub.fetch);
}

describe("ApiClient request shaping", () => {
  it("sends the X-User header on every call", async () => {
    const stub = new StubFetch().on("GET", "/api/cloud", { tags: [] });
    await client(stub).cloud("global");
    expect(stub.calls[0].headers["X-User"]).toBe("maya");
  });

  it("omits the header for anonymous clients", async () => {
    const stub = new StubFetch().on("GET", "/api/cloud", { tags: [] });
    await client(stub, null).cloud("global");
    expect(stub.calls[0].headers["X-User"]).toBeUndefined();
  });

  it("repeats list parameters instead of joining them", async () => {
    const stub = new StubFetch().on("GET", "/api/context", {
      centers: [],
      nodes: [],
      edges: [],
    });
    await client(stub).context(["tag:a", "url:http://x.example/"], "social", {
      depth: 2,
      maxNeighbors: 5,
      extraTags: ["b", "c"],
    });
    const url = stub.calls[0].url;
    expect(url.searchParams.getAll("centers")).toEqual([
      "tag:a",
      "url:http://x.example/",
    ]);
    expect(url.searchParams.getAll("extra_tags")).toEqual(["b", "c"]);
    expect(url.searchParams.get("depth")).toBe("2");
    expect(url.searchParams.get("max_neighbors")).toBe("5");
    expect(url.searchParams.get("max_nodes")).toBeNull();
  });

  it("posts annotation bodies as JSON", async () => {
    const stub = new StubFetch().on("POST", "/api/annotations", { created: [] });
    await client(stub).addAnnotation("http://x.example/", ["a", "b"], "X");
    expect(stub.calls[0].body).toEqual({
      url: "http://x.example/",
      tags: ["a", "b"],
      title: "X",
    });
    expect(stub.calls[0].headers["Content-Type"]).toBe("application/json");
  });

  it("maps the rename body to the wire's old/new fields", async () => {
    const stub = new StubFetch().on("POST", "/api/tags/rename", { renamed: 2 });
    const out = await client(stub).renameTag("teh", "tech");
    expect(out.renamed).toBe(2);
    expect(stub.calls[0].body).toEqual({ old: "teh", new: "tech" });
  });

  it("unwraps list envelopes", async () => {
    const stub = new StubFetch()
      .on("GET", "/api/recommend", { tags: [{ label: "tech", score: 3 }] })
      .on("GET", "/api/resources", {
        resources: [{ url: "http://x.example/", weight: 1, title: null }],
      });
    const c = client(stub);
    expect(await c.recommend("http://x.example/")).toEqual([
      { label: "tech", score: 3 },
    ]);
    expect((await c.resources(["tech"], "global"))[0].url).toBe("http://x.example/");
  });

  it("sends event batches as a bare JSON array", async () => {
    const stub = new StubFetch().on("POST", "/api/events", { recorded: 2 });
    await client(stub).postEvents([
      { at: 1.0, mode: "viz", action: "add" },
      { at: 2.0, mode: "viz", action: "edit" },
    ]);
    expect(Array.isArray(stub.calls[0].body)).toBe(true);
    expect((stub.calls[0].body as unknown[]).length).toBe(2);
  });
});

describe("ApiClient error mapping", () => {
  it("raises ApiError carrying the server's code and message", async () => {
    const stub = new StubFetch().on("GET", "/api/context", () => ({
      status: 404,
      json: { code: "unknown_center", message: "no such tag" },
    }));
    const err = await client(stub)
      .context(["tag:nope"], "social")
      .catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(404);
    expect(err.code).toBe("unknown_center");
    expect(err.message).toBe("no such tag");
  });

  it("keeps a generic code when the error body is not JSON", async () => {
    const raw = async () => new Response("boom", { status: 500 });
    const c = new ApiClient("http://h.test/", "maya", raw as typeof fetch);
    const err = await c.cloud("global").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.code).toBe("http_error");
    expect(err.status).toBe(500);
  });
});
