/**
 * Designer state: the working constellation, the latest descriptor
 * report, and the request discipline around them.
 *
 * Geometry edits invalidate the displayed report immediately and
 * schedule a debounced refresh; refreshes carry a sequence number so a
 * late response for an older geometry is discarded (latest wins). Drags
 * that would create a duplicate point are rejected so the working
 * constellation always satisfies the service's invariants before any
 * call. Monte Carlo runs are explicit, tracked by a handle, and
 * cancellable.
 */

import {
  ApiClient,
  ApiError,
  ConstellationPayload,
  ConesPayload,
  McPayload,
  ReportPayload,
} from "./api";
import { distance, Vec2 } from "./geometry";

export interface StorePoint extends Vec2 {
  label: string;
}

export interface McHandle {
  readonly id: number;
  readonly promise: Promise<McPayload | null>;
  cancel(): void;
}

const DEFAULT_DEBOUNCE_MS = 150;

export class DesignerStore {
  points: StorePoint[] = [];
  selected: number | null = null;
  lambda = 0.5;
  p0Mode: "auto" | "fixed" = "auto";
  p0Fixed = 1.0;

  report: ReportPayload | null = null;
  patches: ConesPayload | null = null;
  /** False whenever the displayed report lags the geometry. */
  reportFresh = false;
  lastError: string | null = null;

  mcResult: McPayload | null = null;
  mcError: string | null = null;
  mcRunning = false;

  private seq = 0;
  private debounceTimer: ReturnType<typeof setTimeout> | null = null;
  private pendingRefreshes = 0;
  private idleResolvers: (() => void)[] = [];
  private mcHandleId = 0;
  private activeMc: { id: number; controller: AbortController } | null = null;

  constructor(
    readonly api: ApiClient,
    private readonly onChange: () => void = () => {},
    private readonly debounceMs: number = DEFAULT_DEBOUNCE_MS,
  ) {}

  constellationPayload(): ConstellationPayload {
    return {
      dim: 2,
      points: this.points.map((p) => [p.x, p.y]),
      labels: this.points.map((p) => p.label),
    };
  }

  /** Positions closer than this to another point are snap-rejected. */
  duplicateTolerance(): number {
    const maxAbs = this.points.reduce(
      (m, p) => Math.max(m, Math.abs(p.x), Math.abs(p.y)),
      0,
    );
    return 1e-6 * (1 + maxAbs);
  }

  setPoints(points: Vec2[], labels?: string[]): void {
    this.points = points.map((p, i) => ({
      x: p.x,
      y: p.y,
      label: labels?.[i] ?? `s${i}`,
    }));
    this.selected = null;
    this.invalidate();
    this.scheduleRefresh(0);
  }

  /**
   * Move one point; returns false (and changes nothing) when the new
   * position would duplicate another point, so the caller can snap back.
   */
  movePoint(index: number, x: number, y: number): boolean {
    if (!Number.isFinite(x) || !Number.isFinite(y)) return false;
    const tol = this.duplicateTolerance();
    for (let j = 0; j < this.points.length; j++) {
      if (j !== index && distance(this.points[j], { x, y }) < tol) {
        return false;
      }
    }
    this.points[index] = { ...this.points[index], x, y };
    this.invalidate();
    this.scheduleRefresh(this.debounceMs);
    return true;
  }

  addPoint(x: number, y: number): boolean {
    const tol = this.duplicateTolerance();
    if (this.points.some((p) => distance(p, { x, y }) < tol)) return false;
    this.points.push({ x, y, label: `s${this.points.length}` });
    this.invalidate();
    this.scheduleRefresh(0);
    return true;
  }

  removePoint(index: number): void {
    if (this.points.length <= 1) return;
    this.points.splice(index, 1);
    if (this.selected === index) this.selected = null;
    this.invalidate();
    this.scheduleRefresh(0);
  }

  private invalidate(): void {
    this.reportFresh = false;
    this.lastError = null;
    this.onChange();
  }

  private scheduleRefresh(delay: number): void {
    if (this.debounceTimer !== null) clearTimeout(this.debounceTimer);
    this.debounceTimer = setTimeout(() => {
      this.debounceTimer = null;
      void this.refresh();
    }, delay);
  }

  async refresh(): Promise<void> {
    if (this.points.length === 0) return;
    const mySeq = ++this.seq;
    const payload = this.constellationPayload();
    this.pendingRefreshes++;
    try {
      const [report, patches] = await Promise.all([
        this.api.analyze(payload),
        this.api.cones(payload),
      ]);
      if (mySeq === this.seq) {
        this.report = report;
        this.patches = patches;
        this.reportFresh = true;
        this.lastError = null;
      }
    } catch (err) {
      if (mySeq === this.seq) {
        this.lastError = err instanceof Error ? err.message : String(err);
      }
    } finally {
      this.pendingRefreshes--;
      this.onChange();
      this.settleIdle();
    }
  }

  /** Resolves once no refresh is scheduled or in flight. */
  whenIdle(): Promise<void> {
    if (this.debounceTimer === null && this.pendingRefreshes === 0) {
      return Promise.resolve();
    }
    return new Promise((resolve) => this.idleResolvers.push(resolve));
  }

  private settleIdle(): void {
    if (this.debounceTimer === null && this.pendingRefreshes === 0) {
      const resolvers = this.idleResolvers;
      this.idleResolvers = [];
      for (const resolve of resolvers) resolve();
    }
  }

  /** Launch an explicit Monte Carlo run; never triggered by edits. */
  runMc(gamma: number, nSamples: number, seed = 2026): McHandle {
    if (!(gamma > 0) || !(nSamples > 0)) {
      this.mcError = "gamma and sample count must be positive";
      this.onChange();
      const id = ++this.mcHandleId;
      return { id, promise: Promise.resolve(null), cancel: () => {} };
    }
    this.activeMc?.controller.abort();
    const controller = new AbortController();
    const id = ++this.mcHandleId;
    this.activeMc = { id, controller };
    this.mcRunning = true;
    this.mcError = null;
    this.onChange();

    const promise = this.api
      .mc(this.constellationPayload(), gamma, nSamples, seed, controller.signal)
      .then((result) => {
        if (this.activeMc?.id === id) {
          this.mcResult = result;
          this.mcRunning = false;
          this.onChange();
        }
        return result;
      })
      .catch((err) => {
        if (this.activeMc?.id === id) {
          this.mcRunning = false;
          this.mcError =
            err instanceof ApiError ? err.message : err?.name === "AbortError" ? null : String(err);
          this.onChange();
        }
        return null;
      });
    return { id, promise, cancel: () => controller.abort() };
  }

  cancelMc(): void {
    this.activeMc?.controller.abort();
    this.mcRunning = false;
    this.onChange();
  }
}
