// End-to-end run against a real backend process.
//
// Spawns the Python service on a scratch journal, seeds it over HTTP as
// two other users, then drives the controller through the scripted
// bookmarklet flow: land on the context view, add the page to the
// collection, trim the recommended tags, and check the final personal
// view. The interaction log the run produced is pushed to the server and
// read back through the session-analytics endpoint.

import { spawn, execFileSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { createServer } from "node:net";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { menuFor, type NodeAction } from "../src/actions.js";
import { EventBatcher } from "../src/events.js";
import { AppController } from "../src/state.js";
import { buildScene, GLOBAL_COLOR, LOCAL_COLOR } from "../src/viewmodel.js";
import type { ClickEventDto } from "../src/types.js";

const TARGET = "http://fieldnotes.example/entry/7";

let proc: ChildProcess | null = null;
let scratch = "";
let base = "";

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const srv = createServer();
    srv.listen(0, "127.0.0.1", () => {
      const addr = srv.address();
      if (addr && typeof addr === "object") {
        const port = addr.port;
        srv.close(() => resolve(port));
      } else {
        srv.close(() => reject(new Error("no port assigned")));
      }
    });
  });
}

async function waitForServer(url: string, timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastErr: unknown = null;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(url);
      if (resp.ok) return;
    } catch (err) {
      lastErr = err;
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error(`backend did not come up at ${url}: ${lastErr}`);
}

function clientFor(user: string): ApiClient {
  return new ApiClient(base, user);
}

beforeAll(async () => {
  scratch = mkdtempSync(join(tmpdir(), "taggraph-e2e-"));
  const port = await freePort();
  base = `http://127.0.0.1:${port}/`;
  proc = spawn(
    "python3",
    [
      "-m",
      "taggraph",
      "--host",
      "127.0.0.1",
      "--port",
      String(port),
      "--journal",
      join(scratch, "journal.jsonl"),
    ],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  proc.stderr?.on("data", () => undefined); // keep the pipe drained
  proc.stdout?.on("data", () => undefined);
  await waitForServer(base, 20_000);

  // seed the folksonomy as two established users
  const maya = clientFor("maya");
  const li = clientFor("li");
  await maya.addAnnotation(TARGET, ["web", "research"], "Field Notes, entry 7");
  await maya.addAnnotation("http://other.example/a", ["web", "tools"]);
  await li.addAnnotation(TARGET, ["web", "maps"]);
  await li.addAnnotation("http://other.example/b", ["maps"]);
}, 60_000);

afterAll(() => {
  if (proc) proc.kill();
  if (scratch) rmSync(scratch, { recursive: true, force: true });
});

describe("bookmarklet add flow against the live backend", () => {
  it("bookmarklet add flow ends green, with recommended tags and a clean log", async () => {
    const api = clientFor("noor");
    const sent: ClickEventDto[][] = [];
    const batcher = new EventBatcher(
      async (batch) => {
        sent.push(batch);
        await api.postEvents(batch);
      },
      { schedule: () => null, cancel: () => undefined },
    );
    const controller = new AppController({ api, batcher });

    // (a) land from the bookmarklet: social context around the page
    await controller.landFromBookmarklet(TARGET);
    expect(controller.state.banner).toBeNull();
    expect(controller.state.view).toBe("social");
    const landedGraph = controller.state.graph!;
    const landedCenter = landedGraph.nodes.find((n) => n.is_center)!;
    expect(landedCenter.id).toBe(TARGET);
    expect(landedCenter.locality).toBe("global"); // not ours yet: purple
    const landedScene = buildScene(landedGraph);
    expect(landedScene.nodes.find((sn) => sn.node.is_center)!.color).toBe(
      GLOBAL_COLOR,
    );

    // what the recommender says right now, straight from the endpoint
    const expected = (await api.recommend(TARGET)).map((s) => s.label);
    expect(expected).toEqual(["web", "maps", "research"]);

    // (b) add to collection: one gesture, recommendations pre-checked
    await controller.runAction(landedCenter, "add_to_collection");
    expect(controller.state.banner).toBeNull();
    const editor = controller.state.editor!;
    expect(editor.suggested).toEqual(expected);
    expect(editor.tags).toEqual(expected);

    // (c) customize: drop the weakest recommendation, keep the rest
    controller.toggleEditorTag("research");
    expect(controller.state.editor!.tags).toEqual(["web", "maps"]);

    // (d) confirm: second gesture, lands on the personal view
    await controller.confirmEditor();
    expect(controller.state.banner).toBeNull();
    expect(controller.state.view).toBe("personal");
    const finalGraph = controller.state.graph!;
    const finalCenter = finalGraph.nodes.find((n) => n.is_center)!;
    expect(finalCenter.id).toBe(TARGET);
    expect(finalCenter.locality).toBe("local");

    // (e) the added resource renders green
    const finalScene = buildScene(finalGraph);
    expect(finalScene.nodes.find((sn) => sn.node.is_center)!.color).toBe(
      LOCAL_COLOR,
    );
    const tagIds = finalGraph.nodes
      .filter((n) => n.kind === "tag")
      .map((n) => n.id)
      .sort();
    expect(tagIds).toEqual(["maps", "web"]);

    // whole flow took two gestures, well under the five allowed
    await controller.flushEvents();
    const emitted = sent.flat();
    expect(emitted.length).toBe(2);
    expect(emitted.length).toBeLessThanOrEqual(5);
    expect(emitted.map((e) => e.action)).toEqual(["add", "edit"]);
    expect(emitted.every((e) => e.mode === "viz")).toBe(true);

    // replay through the server's session analytics: every click in the
    // scripted run is content-related and lands in one viz session
    const stats = await api.stats();
    expect(stats.viz.content_fraction).toBe(1.0);
    expect(stats.viz.n_sessions).toBe(1);
    expect(stats.viz.mean_clicks).toBe(emitted.length);
    expect(stats.list.n_sessions).toBe(0);
  });
});

describe("menu soundness against the backend implementation", () => {
  it("renders exactly the node_actions menu for every node of a live graph", async () => {
    // ask the backend's own node_actions for its full table
    const script = [
      "import json",
      "from taggraph.context import ContextNode, Locality, NodeKind, NodeRef, node_actions",
      "table = {}",
      "for kind in NodeKind:",
      "    for loc in Locality:",
      "        n = ContextNode(NodeRef(kind, 'x'), loc, 1)",
      "        table[kind.value + ':' + loc.value] = [a.value for a in node_actions(n)]",
      "print(json.dumps(table))",
    ].join("\n");
    const backendTable: Record<string, NodeAction[]> = JSON.parse(
      execFileSync("python3", ["-c", script], { encoding: "utf8" }),
    );

    for (const [key, actions] of Object.entries(backendTable)) {
      const [kind, locality] = key.split(":") as ["tag" | "resource", "local" | "global"];
      expect(menuFor(kind, locality)).toEqual(actions);
    }

    // and the rendered scene of a real mixed-locality graph agrees node by
    // node; maya sees her own items local and li's as global
    const api = clientFor("maya");
    const graph = await api.context(["tag:web"], "social", {
      depth: 2,
      maxNeighbors: 50,
      maxNodes: 100,
    });
    const localities = new Set(graph.nodes.map((n) => `${n.kind}:${n.locality}`));
    expect(localities.size).toBeGreaterThanOrEqual(3); // a genuine mix
    const scene = buildScene(graph);
    for (const sn of scene.nodes) {
      expect(sn.actions).toEqual(
        backendTable[`${sn.node.kind}:${sn.node.locality}`],
      );
    }
  });
});
