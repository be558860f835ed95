// Display-space math.  Exact integers stay on the server; everything here
// is float approximation used purely for drawing and layout.

import type { WireInt } from "./api.js";

export interface Box {
  xmin: number;
  xmax: number;
  ymin: number;
  ymax: number;
}

export function toNumber(v: WireInt): number {
  return typeof v === "number" ? v : Number(v);
}

/** Bounding box of the point set, padded by a fraction of its extent. */
export function dataBox(points: number[][], pad = 0.25): Box {
  const xs = points.map((p) => p[0] ?? 0);
  const ys = points.map((p) => p[1] ?? 0);
  const xmin = Math.min(...xs);
  const xmax = Math.max(...xs);
  const ymin = Math.min(...ys);
  const ymax = Math.max(...ys);
  const dx = Math.max(xmax - xmin, 1) * pad;
  const dy = Math.max(ymax - ymin, 1) * pad;
  return { xmin: xmin - dx, xmax: xmax + dx, ymin: ymin - dy, ymax: ymax + dy };
}

/**
 * Clip the line a*x + b*y + c = 0 to a box; null when it misses.
 * Returns the two extreme border intersections along the line direction.
 */
export function clipLine(a: number, b: number, c: number, box: Box): [number[], number[]] | null {
  const eps = 1e-9 * (Math.abs(box.xmax - box.xmin) + Math.abs(box.ymax - box.ymin) + 1);
  const hits: number[][] = [];
  if (b !== 0) {
    for (const x of [box.xmin, box.xmax]) {
      const y = -(c + a * x) / b;
      if (y >= box.ymin - eps && y <= box.ymax + eps) hits.push([x, y]);
    }
  }
  if (a !== 0) {
    for (const y of [box.ymin, box.ymax]) {
      const x = -(c + b * y) / a;
      if (x >= box.xmin - eps && x <= box.xmax + eps) hits.push([x, y]);
    }
  }
  if (hits.length < 2) return null;
  // order along the line direction (-b, a) and take the extremes
  const t = (p: number[]) => -b * (p[0] ?? 0) + a * (p[1] ?? 0);
  hits.sort((p, q) => t(p) - t(q));
  const first = hits[0]!;
  const last = hits[hits.length - 1]!;
  if (Math.abs(t(last) - t(first)) < eps) return null; // grazes a corner
  return [first, last];
}

/** Map data coordinates into a width x height viewport, y pointing up. */
export function makeTransform(box: Box, width: number, height: number, margin = 20) {
  const sx = (width - 2 * margin) / (box.xmax - box.xmin);
  const sy = (height - 2 * margin) / (box.ymax - box.ymin);
  const s = Math.min(sx, sy);
  return (x: number, y: number): [number, number] => [
    margin + (x - box.xmin) * s,
    height - margin - (y - box.ymin) * s,
  ];
}

/** Smallest integer >= n/3 with the parity of n. */
export function thirdBound(n: number): number {
  let bound = Math.ceil(n / 3);
  if ((bound - n) % 2 !== 0) bound += 1;
  return bound;
}

/** The guarantee displayed for a certificate's bound kind. */
export function boundForKind(kind: string, n: number): number {
  if (kind === "third") return thirdBound(n);
  if (kind === "n_minus_2" || kind === "near_perfect") return n - 2;
  if (kind === "balance") return 2; // meaning |final| <= 2
  throw new Error(`unknown bound kind: ${kind}`);
}

/** Does a final discrepancy meet the displayed bound for its kind? */
export function meetsBound(kind: string, final: number, n: number): boolean {
  if (kind === "balance") return Math.abs(final) <= 2;
  return final >= boundForKind(kind, n);
}
