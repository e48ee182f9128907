import { describe, expect, it } from "vitest";

import type { PatchPayload } from "../src/api";
import {
  fitViewport,
  nearestSiteIndex,
  screenToWorld,
  wedgeArc,
  wedgeMathAngles,
  worldToScreen,
} from "../src/geometry";

const HALF_DEGREE = (0.5 * Math.PI) / 180;

function arcPatch(start: number, length: number): PatchPayload {
  return { kind: "arc", start_angle: start, arc_length: length, fraction: length / (2 * Math.PI) };
}

describe("viewport transforms", () => {
  it("round-trips world and screen coordinates", () => {
    const pts = [
      { x: -1, y: -1 },
      { x: 1, y: 2 },
      { x: 0.3, y: -0.4 },
    ];
    const vp = fitViewport(pts, 560, 560);
    for (const p of pts) {
      const back = screenToWorld(vp, worldToScreen(vp, p));
      expect(back.x).toBeCloseTo(p.x, 9);
      expect(back.y).toBeCloseTo(p.y, 9);
    }
  });

  it("keeps all points inside the canvas", () => {
    const pts = [
      { x: -3, y: 0 },
      { x: 4, y: 1 },
      { x: 0, y: -2 },
    ];
    const vp = fitViewport(pts, 560, 400);
    for (const p of pts) {
      const s = worldToScreen(vp, p);
      expect(s.x).toBeGreaterThanOrEqual(0);
      expect(s.x).toBeLessThanOrEqual(560);
      expect(s.y).toBeGreaterThanOrEqual(0);
      expect(s.y).toBeLessThanOrEqual(400);
    }
  });

  it("flips the y axis (world up is screen up)", () => {
    const vp = fitViewport([{ x: 0, y: -1 }, { x: 0, y: 1 }], 100, 100);
    const top = worldToScreen(vp, { x: 0, y: 1 });
    const bottom = worldToScreen(vp, { x: 0, y: -1 });
    expect(top.y).toBeLessThan(bottom.y);
  });
});

describe("wedge rendering angles", () => {
  it("reproduces the patch data within half a degree", () => {
    const patches = [
      arcPatch(Math.PI / 4, (3 * Math.PI) / 4),
      arcPatch((7 * Math.PI) / 4, Math.PI / 2),
      arcPatch(0, Math.PI),
      arcPatch(5.9, 0.7),
    ];
    for (const patch of patches) {
      const arc = wedgeArc(patch);
      expect(arc).not.toBeNull();
      const { start, length } = wedgeMathAngles(arc!);
      expect(Math.abs(length - patch.arc_length)).toBeLessThan(HALF_DEGREE);
      const startDelta = Math.abs(
        ((start - patch.start_angle + Math.PI) % (2 * Math.PI)) - Math.PI,
      );
      expect(startDelta).toBeLessThan(HALF_DEGREE);
    }
  });

  it("maps rays to zero-width arcs and empty patches to null", () => {
    const ray = wedgeArc({
      kind: "degenerate_ray",
      start_angle: Math.PI,
      arc_length: 0,
      fraction: 0,
    });
    expect(ray).not.toBeNull();
    expect(wedgeMathAngles(ray!).length).toBe(0);
    expect(
      wedgeArc({ kind: "empty", start_angle: 0, arc_length: 0, fraction: 0 }),
    ).toBeNull();
  });
});

describe("nearest site lookup", () => {
  it("selects the closest point", () => {
    const pts = [
      { x: 0, y: 0 },
      { x: 2, y: 0 },
      { x: 0, y: 2 },
    ];
    expect(nearestSiteIndex(pts, { x: 0.2, y: 0.1 })).toBe(0);
    expect(nearestSiteIndex(pts, { x: 1.9, y: 0.2 })).toBe(1);
    expect(nearestSiteIndex(pts, { x: -0.1, y: 1.8 })).toBe(2);
  });
});
