import type { Edge } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

function hashString(text: string): number {
  let h = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 0x01000193);
  }
  return h >>> 0;
}

export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/**
 * Force-directed layout, deterministically seeded by the map id so a map
 * always renders the same picture. Plain spring/repulsion iteration; no
 * randomness after the seeded initial placement.
 */
export function layoutCognitive(
  labels: string[],
  edges: Edge[],
  seedKey: string,
  width: number,
  height: number,
): Map<string, Point> {
  const rng = mulberry32(hashString(seedKey));
  const n = labels.length;
  const index = new Map(labels.map((label, i) => [label, i]));
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) * 0.38;
  const xs: number[] = [];
  const ys: number[] = [];
  for (let i = 0; i < n; i++) {
    const angle = (2 * Math.PI * i) / Math.max(n, 1) + rng() * 0.5;
    xs.push(cx + radius * Math.cos(angle) + (rng() - 0.5) * 20);
    ys.push(cy + radius * Math.sin(angle) + (rng() - 0.5) * 20);
  }
  const links: Array<[number, number]> = [];
  for (const [src, dst] of edges) {
    const i = index.get(src);
    const j = index.get(dst);
    if (i !== undefined && j !== undefined && i !== j) links.push([i, j]);
  }
  const spring = Math.min(width, height) * 0.28;
  for (let iter = 0; iter < 200; iter++) {
    const fx = new Array(n).fill(0);
    const fy = new Array(n).fill(0);
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        const dx = xs[i] - xs[j];
        const dy = ys[i] - ys[j];
        const d2 = dx * dx + dy * dy + 0.01;
        const f = 2200 / d2;
        const d = Math.sqrt(d2);
        fx[i] += (dx / d) * f;
        fy[i] += (dy / d) * f;
        fx[j] -= (dx / d) * f;
        fy[j] -= (dy / d) * f;
      }
    }
    for (const [i, j] of links) {
      const dx = xs[j] - xs[i];
      const dy = ys[j] - ys[i];
      const d = Math.sqrt(dx * dx + dy * dy) + 0.01;
      const f = 0.02 * (d - spring);
      fx[i] += (dx / d) * f;
      fy[i] += (dy / d) * f;
      fx[j] -= (dx / d) * f;
      fy[j] -= (dy / d) * f;
    }
    const cool = 1 - iter / 200;
    for (let i = 0; i < n; i++) {
      xs[i] += Math.max(-8, Math.min(8, fx[i])) * cool;
      ys[i] += Math.max(-8, Math.min(8, fy[i])) * cool;
      xs[i] += (cx - xs[i]) * 0.002;
      ys[i] += (cy - ys[i]) * 0.002;
      xs[i] = Math.max(30, Math.min(width - 30, xs[i]));
      ys[i] = Math.max(24, Math.min(height - 24, ys[i]));
    }
  }
  return new Map(labels.map((label, i) => [label, { x: xs[i], y: ys[i] }]));
}

/** Relational maps render as two facing columns: domain left, range right. */
export function layoutRelational(
  domainLabels: string[],
  rangeLabels: string[],
  width: number,
  height: number,
): Map<string, Point> {
  const points = new Map<string, Point>();
  const column = (labels: string[], x: number) => {
    const step = height / (labels.length + 1);
    labels.forEach((label, i) => points.set(label, { x, y: step * (i + 1) }));
  };
  column(domainLabels, width * 0.22);
  column(rangeLabels, width * 0.78);
  return points;
}
