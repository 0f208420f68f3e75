// Deterministic force-directed placement for the context graph.
//
// The layout is a pure function of the graph shape: the same nodes and
// edges always land at the same coordinates, so snapshots and replays are
// stable without a persisted layout state. Node identity seeds the initial
// ring position; a fixed number of spring/repulsion rounds then relaxes it.

import type { ContextGraphDto } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

const ROUNDS = 120;
const SPRING = 0.02;
const SPRING_LENGTH = 110;
const REPULSION = 2600;
const COOLING = 0.95;

function hashId(id: string): number {
  // FNV-1a, folded to 32 bits; only used to scatter starting angles.
  let h = 0x811c9dc5;
  for (let i = 0; i < id.length; i++) {
    h ^= id.charCodeAt(i);
    h = Math.imul(h, 0x01000193);
  }
  return h >>> 0;
}

export function layoutGraph(
  graph: ContextGraphDto,
  width = 900,
  height = 600,
): Map<string, Point> {
  const nodes = graph.nodes;
  const pts: Point[] = nodes.map((n, i) => {
    const h = hashId(`${n.kind}:${n.id}`);
    const angle = ((h % 3600) / 3600) * 2 * Math.PI;
    const radius = n.is_center ? 10 : 140 + (i % 5) * 28;
    return {
      x: width / 2 + radius * Math.cos(angle),
      y: height / 2 + radius * Math.sin(angle),
    };
  });

  let temperature = 24;
  for (let round = 0; round < ROUNDS; round++) {
    const fx = new Array<number>(nodes.length).fill(0);
    const fy = new Array<number>(nodes.length).fill(0);

    for (let i = 0; i < nodes.length; i++) {
      for (let j = i + 1; j < nodes.length; j++) {
        let dx = pts[i].x - pts[j].x;
        let dy = pts[i].y - pts[j].y;
        let d2 = dx * dx + dy * dy;
        if (d2 < 1e-6) {
          // coincident points: nudge apart along a stable axis
          dx = 0.5 + ((i * 31 + j) % 7) * 0.1;
          dy = 0.5;
          d2 = dx * dx + dy * dy;
        }
        const f = REPULSION / d2;
        const d = Math.sqrt(d2);
        fx[i] += (dx / d) * f;
        fy[i] += (dy / d) * f;
        fx[j] -= (dx / d) * f;
        fy[j] -= (dy / d) * f;
      }
    }

    for (const [ti, ri] of graph.edges) {
      const dx = pts[ri].x - pts[ti].x;
      const dy = pts[ri].y - pts[ti].y;
      const d = Math.sqrt(dx * dx + dy * dy) || 1;
      const f = SPRING * (d - SPRING_LENGTH);
      fx[ti] += (dx / d) * f;
      fy[ti] += (dy / d) * f;
      fx[ri] -= (dx / d) * f;
      fy[ri] -= (dy / d) * f;
    }

    for (let i = 0; i < nodes.length; i++) {
      if (nodes[i].is_center) continue; // centers stay pinned
      const mag = Math.sqrt(fx[i] * fx[i] + fy[i] * fy[i]) || 1;
      const step = Math.min(mag, temperature);
      pts[i].x += (fx[i] / mag) * step;
      pts[i].y += (fy[i] / mag) * step;
      pts[i].x = Math.min(width - 40, Math.max(40, pts[i].x));
      pts[i].y = Math.min(height - 40, Math.max(40, pts[i].y));
    }
    temperature *= COOLING;
  }

  const out = new Map<string, Point>();
  nodes.forEach((n, i) => {
    out.set(`${n.kind}:${n.id}`, {
      x: Math.round(pts[i].x * 100) / 100,
      y: Math.round(pts[i].y * 100) / 100,
    });
  });
  return out;
}
