// Pure presentation models: what to draw, never how to fetch it.

import { layoutGraph } from "./layout.js";
import { menuFor, type NodeAction } from "./actions.js";
import type {
  ContextGraphDto,
  GraphNodeDto,
  Locality,
  SizedTagDto,
} from "./types.js";

export const LOCAL_COLOR = "#2e8b57"; // green: in the viewer's collection
export const GLOBAL_COLOR = "#7b4fa6"; // purple: everyone else's

export function colorFor(locality: Locality): string {
  return locality === "local" ? LOCAL_COLOR : GLOBAL_COLOR;
}

export interface SceneNode {
  key: string;
  node: GraphNodeDto;
  x: number;
  y: number;
  color: string;
  shape: "circle" | "rounded-rect";
  label: string;
  actions: NodeAction[];
}

export interface SceneEdge {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface Scene {
  nodes: SceneNode[];
  edges: SceneEdge[];
}

export function nodeKey(node: GraphNodeDto): string {
  return `${node.kind}:${node.id}`;
}

function labelFor(node: GraphNodeDto): string {
  if (node.kind === "tag") return node.id;
  if (node.title) return node.title;
  try {
    const u = new URL(node.id);
    return u.host + (u.pathname !== "/" ? u.pathname : "");
  } catch {
    return node.id;
  }
}

export function buildScene(
  graph: ContextGraphDto,
  width = 900,
  height = 600,
): Scene {
  const positions = layoutGraph(graph, width, height);
  const nodes: SceneNode[] = graph.nodes.map((n) => {
    const key = nodeKey(n);
    const pt = positions.get(key)!;
    return {
      key,
      node: n,
      x: pt.x,
      y: pt.y,
      color: colorFor(n.locality),
      shape: n.kind === "resource" ? "circle" : "rounded-rect",
      label: labelFor(n),
      actions: menuFor(n.kind, n.locality),
    };
  });
  const byIndex = graph.nodes.map((n) => positions.get(nodeKey(n))!);
  const edges: SceneEdge[] = graph.edges.map(([ti, ri]) => ({
    x1: byIndex[ti].x,
    y1: byIndex[ti].y,
    x2: byIndex[ri].x,
    y2: byIndex[ri].y,
  }));
  return { nodes, edges };
}

export interface CloudEntry {
  label: string;
  size: number;
  selected: boolean;
}

/** Cloud entries in exactly the order the server returned them. */
export function buildCloud(
  sized: SizedTagDto[],
  selected: ReadonlySet<string>,
): CloudEntry[] {
  return sized.map((s) => ({
    label: s.label,
    size: s.size,
    selected: selected.has(s.label),
  }));
}
