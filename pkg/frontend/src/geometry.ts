/**
 * Pure rendering math: viewport transforms, canvas wedge angles, and the
 * nearest-site lookup used to rasterize decision cells. These are
 * coordinate transforms only; all reliability numbers come from the
 * service.
 */

import type { PatchPayload } from "./api";

export interface Viewport {
  scale: number;
  centerX: number;
  centerY: number;
  width: number;
  height: number;
}

export interface Vec2 {
  x: number;
  y: number;
}

const TAU = 2 * Math.PI;

export function fitViewport(
  points: Vec2[],
  width: number,
  height: number,
  padFraction = 0.18,
): Viewport {
  let minX = -1, maxX = 1, minY = -1, maxY = 1;
  if (points.length > 0) {
    minX = Math.min(...points.map((p) => p.x));
    maxX = Math.max(...points.map((p) => p.x));
    minY = Math.min(...points.map((p) => p.y));
    maxY = Math.max(...points.map((p) => p.y));
  }
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  const usable = 1 - 2 * padFraction;
  const scale = Math.min((width * usable) / spanX, (height * usable) / spanY);
  return {
    scale,
    centerX: (minX + maxX) / 2,
    centerY: (minY + maxY) / 2,
    width,
    height,
  };
}

/** World coordinates (y up) to canvas pixels (y down). */
export function worldToScreen(vp: Viewport, p: Vec2): Vec2 {
  return {
    x: vp.width / 2 + (p.x - vp.centerX) * vp.scale,
    y: vp.height / 2 - (p.y - vp.centerY) * vp.scale,
  };
}

export function screenToWorld(vp: Viewport, q: Vec2): Vec2 {
  return {
    x: vp.centerX + (q.x - vp.width / 2) / vp.scale,
    y: vp.centerY - (q.y - vp.height / 2) / vp.scale,
  };
}

export interface WedgeArc {
  /** Canvas-convention angles (y axis points down). */
  startAngle: number;
  endAngle: number;
  anticlockwise: boolean;
}

/**
 * Canvas arc parameters sweeping exactly the patch's angular interval.
 * Returns null for empty patches; rays map to a zero-width arc.
 */
export function wedgeArc(patch: PatchPayload): WedgeArc | null {
  if (patch.kind === "empty") return null;
  if (patch.kind === "full_circle") {
    return { startAngle: 0, endAngle: TAU, anticlockwise: false };
  }
  const a = patch.start_angle;
  const len = patch.kind === "degenerate_ray" ? 0 : patch.arc_length;
  // World angle t maps to canvas angle -t; sweeping t upward means the
  // canvas angle decreases, which canvas calls anticlockwise.
  return { startAngle: -a, endAngle: -(a + len), anticlockwise: true };
}

/** Inverse of wedgeArc, used to verify rendered angles against patch data. */
export function wedgeMathAngles(arc: WedgeArc): { start: number; length: number } {
  const start = ((-arc.startAngle % TAU) + TAU) % TAU;
  const length = arc.anticlockwise
    ? arc.startAngle - arc.endAngle
    : arc.endAngle - arc.startAngle;
  return { start, length };
}

export function nearestSiteIndex(points: Vec2[], p: Vec2): number {
  let best = 0;
  let bestDist = Infinity;
  for (let i = 0; i < points.length; i++) {
    const dx = points[i].x - p.x;
    const dy = points[i].y - p.y;
    const d = dx * dx + dy * dy;
    if (d < bestDist) {
      bestDist = d;
      best = i;
    }
  }
  return best;
}

export function distance(a: Vec2, b: Vec2): number {
  return Math.hypot(a.x - b.x, a.y - b.y);
}
