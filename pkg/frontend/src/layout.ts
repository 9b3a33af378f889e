import { DiagramDoc } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

// Deterministic force-directed layout: vertices start on a circle in
// index order, then a fixed number of spring/repulsion iterations run
// with constant parameters.  No randomness, so the same diagram always
// renders identically.
export function layoutDiagram(
  diagram: DiagramDoc,
  width = 640,
  height = 420,
  iterations = 120,
): Map<number, Point> {
  const n = diagram.n;
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) / 2 - 60;
  const pos = new Map<number, Point>();
  for (let v = 1; v <= n; v++) {
    const angle = (2 * Math.PI * (v - 1)) / Math.max(n, 1) - Math.PI / 2;
    pos.set(v, { x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) });
  }
  if (n <= 2) {
    return pos;
  }
  const target = Math.max(110, (2 * radius * Math.sin(Math.PI / n)) | 0);
  const repel = target * target * 0.9;
  for (let iter = 0; iter < iterations; iter++) {
    const force = new Map<number, Point>();
    for (let v = 1; v <= n; v++) {
      force.set(v, { x: 0, y: 0 });
    }
    for (let u = 1; u <= n; u++) {
      for (let v = u + 1; v <= n; v++) {
        const pu = pos.get(u)!;
        const pv = pos.get(v)!;
        const dx = pu.x - pv.x;
        const dy = pu.y - pv.y;
        const dist2 = Math.max(dx * dx + dy * dy, 1);
        const dist = Math.sqrt(dist2);
        const push = repel / dist2;
        force.get(u)!.x += (dx / dist) * push;
        force.get(u)!.y += (dy / dist) * push;
        force.get(v)!.x -= (dx / dist) * push;
        force.get(v)!.y -= (dy / dist) * push;
      }
    }
    for (const e of diagram.edges) {
      const pt = pos.get(e.tail)!;
      const ph = pos.get(e.head)!;
      const dx = ph.x - pt.x;
      const dy = ph.y - pt.y;
      const dist = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
      const pull = (dist - target) * 0.08;
      force.get(e.tail)!.x += (dx / dist) * pull;
      force.get(e.tail)!.y += (dy / dist) * pull;
      force.get(e.head)!.x -= (dx / dist) * pull;
      force.get(e.head)!.y -= (dy / dist) * pull;
    }
    const damp = 0.85 ** (1 + iter / 20);
    for (let v = 1; v <= n; v++) {
      const p = pos.get(v)!;
      const f = force.get(v)!;
      p.x += Math.max(-18, Math.min(18, f.x)) * damp;
      p.y += Math.max(-18, Math.min(18, f.y)) * damp;
      p.x = Math.max(30, Math.min(width - 30, p.x));
      p.y = Math.max(30, Math.min(height - 30, p.y));
    }
  }
  for (const p of pos.values()) {
    p.x = Math.round(p.x * 100) / 100;
    p.y = Math.round(p.y * 100) / 100;
  }
  return pos;
}
