/** Deterministic force-directed layout for the visitor network.
 *
 * Rendering is capped at the top-N nodes by degree: the full graph can be
 * visually rich to the point of being unreadable, so everything beyond
 * the cap is dropped and reported in an overflow notice.
 */

export interface Edge {
  from: string;
  to: string;
  count: number;
}

export interface Point {
  x: number;
  y: number;
}

export interface CappedGraph {
  nodes: string[];
  edges: Edge[];
  hiddenNodes: number;
}

export function capByDegree(nodes: string[], edges: Edge[], maxNodes: number): CappedGraph {
  if (nodes.length <= maxNodes) {
    return { nodes: [...nodes], edges: [...edges], hiddenNodes: 0 };
  }
  const degree = new Map<string, number>(nodes.map((n) => [n, 0]));
  for (const edge of edges) {
    degree.set(edge.from, (degree.get(edge.from) ?? 0) + edge.count);
    degree.set(edge.to, (degree.get(edge.to) ?? 0) + edge.count);
  }
  const kept = [...nodes]
    .sort((a, b) => (degree.get(b) ?? 0) - (degree.get(a) ?? 0) || (a < b ? -1 : 1))
    .slice(0, maxNodes);
  const keep = new Set(kept);
  return {
    nodes: kept,
    edges: edges.filter((e) => keep.has(e.from) && keep.has(e.to)),
    hiddenNodes: nodes.length - kept.length,
  };
}

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function forceLayout(
  nodes: string[],
  edges: Edge[],
  width: number,
  height: number,
  iterations = 120,
): Map<string, Point> {
  const positions = new Map<string, Point>();
  if (nodes.length === 0) return positions;
  const rand = mulberry32(42);
  for (const node of nodes) {
    positions.set(node, {
      x: width * (0.1 + 0.8 * rand()),
      y: height * (0.1 + 0.8 * rand()),
    });
  }
  if (nodes.length === 1) return positions;

  const k = Math.sqrt((width * height) / nodes.length);
  let temperature = width / 8;
  const cool = temperature / iterations;

  for (let step = 0; step < iterations; step++) {
    const forces = new Map<string, Point>(nodes.map((n) => [n, { x: 0, y: 0 }]));
    for (let i = 0; i < nodes.length; i++) {
      for (let j = i + 1; j < nodes.length; j++) {
        const a = positions.get(nodes[i])!;
        const b = positions.get(nodes[j])!;
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let dist = Math.hypot(dx, dy);
        if (dist < 1e-6) {
          dx = rand() - 0.5;
          dy = rand() - 0.5;
          dist = Math.hypot(dx, dy);
        }
        const repulse = (k * k) / dist;
        const fa = forces.get(nodes[i])!;
        const fb = forces.get(nodes[j])!;
        fa.x += (dx / dist) * repulse;
        fa.y += (dy / dist) * repulse;
        fb.x -= (dx / dist) * repulse;
        fb.y -= (dy / dist) * repulse;
      }
    }
    for (const edge of edges) {
      const a = positions.get(edge.from);
      const b = positions.get(edge.to);
      if (!a || !b || edge.from === edge.to) continue;
      const dx = a.x - b.x;
      const dy = a.y - b.y;
      const dist = Math.max(Math.hypot(dx, dy), 1e-6);
      const attract = (dist * dist) / k;
      const fa = forces.get(edge.from)!;
      const fb = forces.get(edge.to)!;
      fa.x -= (dx / dist) * attract;
      fa.y -= (dy / dist) * attract;
      fb.x += (dx / dist) * attract;
      fb.y += (dy / dist) * attract;
    }
    for (const node of nodes) {
      const force = forces.get(node)!;
      const pos = positions.get(node)!;
      const magnitude = Math.max(Math.hypot(force.x, force.y), 1e-6);
      const step_ = Math.min(magnitude, temperature);
      pos.x += (force.x / magnitude) * step_;
      pos.y += (force.y / magnitude) * step_;
      pos.x = Math.min(width - 20, Math.max(20, pos.x));
      pos.y = Math.min(height - 20, Math.max(20, pos.y));
    }
    temperature = Math.max(temperature - cool, 0.5);
  }
  return positions;
}
