/**
 * Canvas and badge rendering. Decision cells are rasterized by
 * nearest-site lookup on a coarse grid; cone wedges are drawn at a
 * fixed viewport-relative radius (the cones themselves are scale-free).
 * Badges are DOM nodes layered over the canvas so they stay crisp and
 * testable.
 */

import { ConesPayload, ReportPayload } from "./api";
import {
  fitViewport,
  nearestSiteIndex,
  Viewport,
  wedgeArc,
  worldToScreen,
} from "./geometry";
import { StorePoint } from "./state";

const CELL_COLORS = [
  "#bfd7ff",
  "#ffd3c2",
  "#c8f0c8",
  "#f4e3a1",
  "#e2c8f0",
  "#c2ecf4",
  "#f4c2d7",
  "#d7dfc2",
];

const WEDGE_RADIUS_FRACTION = 0.16;
const POINT_RADIUS = 6;
const RASTER_STEP = 4;

export function pointColor(i: number): string {
  return CELL_COLORS[i % CELL_COLORS.length];
}

export function computeViewport(points: StorePoint[], canvas: HTMLCanvasElement): Viewport {
  return fitViewport(points, canvas.width, canvas.height);
}

export function drawScene(
  canvas: HTMLCanvasElement,
  vp: Viewport,
  points: StorePoint[],
  cones: ConesPayload | null,
  selected: number | null,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.clearRect(0, 0, canvas.width, canvas.height);

  drawVoronoiRaster(ctx, vp, points);
  if (cones) drawConeWedges(ctx, vp, points, cones);
  drawPoints(ctx, vp, points, selected);
}

function drawVoronoiRaster(
  ctx: CanvasRenderingContext2D,
  vp: Viewport,
  points: StorePoint[],
): void {
  if (points.length < 2) return;
  const inv = 1 / vp.scale;
  for (let sy = 0; sy < vp.height; sy += RASTER_STEP) {
    for (let sx = 0; sx < vp.width; sx += RASTER_STEP) {
      const wx = vp.centerX + (sx + RASTER_STEP / 2 - vp.width / 2) * inv;
      const wy = vp.centerY - (sy + RASTER_STEP / 2 - vp.height / 2) * inv;
      const site = nearestSiteIndex(points, { x: wx, y: wy });
      ctx.fillStyle = pointColor(site);
      ctx.fillRect(sx, sy, RASTER_STEP, RASTER_STEP);
    }
  }
}

function drawConeWedges(
  ctx: CanvasRenderingContext2D,
  vp: Viewport,
  points: StorePoint[],
  cones: ConesPayload,
): void {
  const radius = Math.min(vp.width, vp.height) * WEDGE_RADIUS_FRACTION;
  cones.patches.forEach((patch, i) => {
    if (i >= points.length) return;
    const arc = wedgeArc(patch);
    if (!arc) return;
    const center = worldToScreen(vp, points[i]);
    ctx.beginPath();
    if (patch.kind === "degenerate_ray") {
      ctx.moveTo(center.x, center.y);
      ctx.lineTo(
        center.x + radius * Math.cos(arc.startAngle),
        center.y + radius * Math.sin(arc.startAngle),
      );
      ctx.strokeStyle = "#cc2222";
      ctx.lineWidth = 2;
      ctx.stroke();
      return;
    }
    ctx.moveTo(center.x, center.y);
    ctx.arc(center.x, center.y, radius, arc.startAngle, arc.endAngle, arc.anticlockwise);
    ctx.closePath();
    ctx.fillStyle = "rgba(30, 30, 30, 0.18)";
    ctx.fill();
    ctx.strokeStyle = "#333333";
    ctx.lineWidth = 1;
    ctx.stroke();
  });
}

function drawPoints(
  ctx: CanvasRenderingContext2D,
  vp: Viewport,
  points: StorePoint[],
  selected: number | null,
): void {
  points.forEach((p, i) => {
    const s = worldToScreen(vp, p);
    ctx.beginPath();
    ctx.arc(s.x, s.y, POINT_RADIUS, 0, 2 * Math.PI);
    ctx.fillStyle = "#222222";
    ctx.fill();
    if (i === selected) {
      ctx.strokeStyle = "#cc2222";
      ctx.lineWidth = 3;
      ctx.stroke();
    }
  });
}

function fmt(x: number): string {
  return Number.isInteger(x) ? String(x) : x.toPrecision(4);
}

/**
 * Rebuild the per-point badge layer. Every point gets an A/B badge; a
 * red collapse badge appears exactly where the report flags A_i = 0.
 * When the report is stale the layer is dimmed until refreshed.
 */
export function renderBadges(
  layer: HTMLElement,
  vp: Viewport,
  points: StorePoint[],
  report: ReportPayload | null,
  fresh: boolean,
): void {
  layer.textContent = "";
  layer.classList.toggle("stale", !fresh);
  if (!report || report.angular_fraction.length !== points.length) return;
  points.forEach((p, i) => {
    const s = worldToScreen(vp, p);
    const badge = document.createElement("div");
    badge.className = "badge";
    badge.style.left = `${s.x + 10}px`;
    badge.style.top = `${s.y - 10}px`;
    badge.dataset.point = String(i);

    const label = document.createElement("span");
    label.className = "badge-label";
    label.textContent = p.label;
    badge.appendChild(label);

    const values = document.createElement("span");
    values.className = "badge-values";
    values.dataset.a = String(report.angular_fraction[i]);
    values.dataset.b = String(report.burden[i]);
    values.textContent = ` A=${fmt(report.angular_fraction[i])} B=${fmt(report.burden[i])}`;
    badge.appendChild(values);

    if (report.collapse_flags[i]) {
      const collapse = document.createElement("span");
      collapse.className = "collapse-badge";
      collapse.textContent = "collapsed";
      badge.appendChild(collapse);
    }
    layer.appendChild(badge);
  });
}
