/**
 * Designer application: canvas editing of a working constellation with
 * live descriptor overlays, explicit Monte Carlo runs, and a live
 * comparison table over saved designs. All numbers displayed come from
 * the analysis service; the client only transforms coordinates.
 */

import { ApiClient, CatalogEntryPayload, ConstellationPayload, McPayload } from "./api";
import { screenToWorld, Viewport } from "./geometry";
import { CompareModel } from "./compare";
import { computeViewport, drawScene, pointColor, renderBadges } from "./render";
import { DesignerStore, McHandle } from "./state";

const CANVAS_SIZE = 560;

export class DesignerApp {
  readonly store: DesignerStore;
  readonly compare: CompareModel;
  readonly api: ApiClient;

  private canvas: HTMLCanvasElement;
  private badgeLayer: HTMLElement;
  private statusLine: HTMLElement;
  private mcPanel: HTMLElement;
  private compareTable: HTMLElement;
  private catalogSelect: HTMLSelectElement;
  private viewport: Viewport | null = null;
  private dragIndex: number | null = null;
  private dragAccepted = true;
  private catalogEntries: CatalogEntryPayload[] = [];
  private mcHandle: McHandle | null = null;

  constructor(root: HTMLElement, apiBase: string) {
    this.api = new ApiClient(apiBase);
    root.innerHTML = this.template();
    this.canvas = root.querySelector<HTMLCanvasElement>("#designer-canvas")!;
    this.badgeLayer = root.querySelector<HTMLElement>("#badge-layer")!;
    this.statusLine = root.querySelector<HTMLElement>("#status-line")!;
    this.mcPanel = root.querySelector<HTMLElement>("#mc-panel")!;
    this.compareTable = root.querySelector<HTMLElement>("#compare-table")!;
    this.catalogSelect = root.querySelector<HTMLSelectElement>("#catalog-select")!;

    this.store = new DesignerStore(this.api, () => this.render());
    this.compare = new CompareModel(this.api, () => this.renderCompare());

    this.wireControls(root);
    this.wirePointerEvents();
    void this.populateCatalog();
  }

  private template(): string {
    return `
      <div class="designer">
        <div class="toolbar">
          <select id="catalog-select"></select>
          <button id="load-button">Load</button>
          <button id="save-design">Save to compare</button>
          <label>gamma <input id="mc-gamma" type="number" value="30" step="any" min="0"></label>
          <label>samples <input id="mc-samples" type="number" value="100000" step="1000" min="0"></label>
          <button id="run-mc">Run MC</button>
          <button id="cancel-mc">Cancel</button>
          <label>lambda <input id="lambda-slider" type="range" min="0" max="1" step="0.01" value="0.5">
            <span id="lambda-value">0.5</span></label>
          <label>p0 <select id="p0-mode">
            <option value="auto">auto (own power)</option>
            <option value="fixed">fixed</option>
          </select><input id="p0-fixed" type="number" value="1" step="any" min="0" disabled></label>
        </div>
        <div class="stage" style="position: relative; width: ${CANVAS_SIZE}px; height: ${CANVAS_SIZE}px;">
          <canvas id="designer-canvas" width="${CANVAS_SIZE}" height="${CANVAS_SIZE}"></canvas>
          <div id="badge-layer" class="badge-layer"></div>
        </div>
        <div id="status-line" class="status"></div>
        <div id="mc-panel" class="mc-panel"></div>
        <h3>Compare saved designs</h3>
        <div id="compare-table"></div>
      </div>`;
  }

  private wireControls(root: HTMLElement): void {
    root.querySelector<HTMLButtonElement>("#load-button")!.addEventListener("click", () => {
      void this.loadCatalog(this.catalogSelect.value);
    });
    root.querySelector<HTMLButtonElement>("#save-design")!.addEventListener("click", () => {
      const name = `design-${this.compare.designs.length + 1}`;
      this.compare.add(name, this.store.constellationPayload());
    });
    root.querySelector<HTMLButtonElement>("#run-mc")!.addEventListener("click", () => {
      const gamma = Number(root.querySelector<HTMLInputElement>("#mc-gamma")!.value);
      const samples = Number(root.querySelector<HTMLInputElement>("#mc-samples")!.value);
      this.mcHandle = this.store.runMc(gamma, samples);
    });
    root.querySelector<HTMLButtonElement>("#cancel-mc")!.addEventListener("click", () => {
      this.mcHandle?.cancel();
      this.store.cancelMc();
    });
    const slider = root.querySelector<HTMLInputElement>("#lambda-slider")!;
    slider.addEventListener("input", () => {
      const lambda = Number(slider.value);
      root.querySelector<HTMLElement>("#lambda-value")!.textContent = slider.value;
      this.store.lambda = lambda;
      this.compare.setLambda(lambda);
    });
    const p0Mode = root.querySelector<HTMLSelectElement>("#p0-mode")!;
    const p0Fixed = root.querySelector<HTMLInputElement>("#p0-fixed")!;
    p0Mode.addEventListener("change", () => {
      const fixed = p0Mode.value === "fixed";
      p0Fixed.disabled = !fixed;
      this.store.p0Mode = fixed ? "fixed" : "auto";
      this.compare.setP0(fixed ? Number(p0Fixed.value) : null);
    });
    p0Fixed.addEventListener("change", () => {
      if (p0Mode.value === "fixed") this.compare.setP0(Number(p0Fixed.value));
    });
  }

  private wirePointerEvents(): void {
    this.canvas.addEventListener("pointerdown", (ev) => {
      const world = this.eventToWorld(ev);
      if (!world || !this.viewport) return;
      const hitRadius = 12 / this.viewport.scale;
      let best: number | null = null;
      let bestDist = hitRadius;
      this.store.points.forEach((p, i) => {
        const d = Math.hypot(p.x - world.x, p.y - world.y);
        if (d < bestDist) {
          best = i;
          bestDist = d;
        }
      });
      this.dragIndex = best;
      this.store.selected = best;
      this.dragAccepted = true;
      this.canvas.setPointerCapture(ev.pointerId);
      this.render();
    });
    this.canvas.addEventListener("pointermove", (ev) => {
      if (this.dragIndex === null) return;
      const world = this.eventToWorld(ev);
      if (!world) return;
      this.dragAccepted = this.store.movePoint(this.dragIndex, world.x, world.y);
      if (!this.dragAccepted) this.flashStatus("duplicate position rejected");
    });
    this.canvas.addEventListener("pointerup", () => {
      this.dragIndex = null;
      this.render();
    });
  }

  private eventToWorld(ev: PointerEvent): { x: number; y: number } | null {
    if (!this.viewport) return null;
    const rect = this.canvas.getBoundingClientRect();
    return screenToWorld(this.viewport, {
      x: ev.clientX - rect.left,
      y: ev.clientY - rect.top,
    });
  }

  async populateCatalog(): Promise<void> {
    try {
      const { entries } = await this.api.catalog();
      this.catalogEntries = entries;
      this.catalogSelect.innerHTML = entries
        .map((e) => `<option value="${e.name}">${e.name}</option>`)
        .join("");
    } catch {
      this.flashStatus("service unreachable; is `ccl serve` running?");
    }
  }

  /** Load a built-in constellation and wait for its fresh report. */
  async loadCatalog(name: string): Promise<void> {
    if (this.catalogEntries.length === 0) await this.populateCatalog();
    const entry = this.catalogEntries.find((e) => e.name === name);
    if (!entry) {
      this.flashStatus(`unknown catalog entry ${name}`);
      return;
    }
    this.loadConstellation(entry.constellation);
    await this.store.whenIdle();
  }

  loadConstellation(c: ConstellationPayload): void {
    this.store.setPoints(
      c.points.map(([x, y]) => ({ x, y })),
      c.labels,
    );
  }

  /** Programmatic drag used by tests; mirrors the pointer path. */
  async dragPointTo(index: number, x: number, y: number): Promise<boolean> {
    const accepted = this.store.movePoint(index, x, y);
    if (!accepted) this.flashStatus("duplicate position rejected");
    await this.store.whenIdle();
    return accepted;
  }

  exportFile(): string {
    return JSON.stringify(this.store.constellationPayload(), null, 1);
  }

  importFile(text: string): void {
    const data = JSON.parse(text) as ConstellationPayload;
    this.loadConstellation(data);
  }

  private flashStatus(message: string): void {
    this.statusLine.textContent = message;
  }

  private render(): void {
    this.viewport = computeViewport(this.store.points, this.canvas);
    drawScene(
      this.canvas,
      this.viewport,
      this.store.points,
      this.store.reportFresh ? this.store.patches : null,
      this.store.selected,
    );
    renderBadges(
      this.badgeLayer,
      this.viewport,
      this.store.points,
      this.store.reportFresh ? this.store.report : null,
      this.store.reportFresh,
    );
    if (this.store.lastError) {
      this.statusLine.textContent = this.store.lastError;
    } else if (!this.store.reportFresh) {
      this.statusLine.textContent = "analyzing...";
    } else {
      const rep = this.store.report;
      this.statusLine.textContent = rep
        ? `a_min=${rep.a_min} b_max=${rep.b_max.toPrecision(6)} power=${rep.average_power.toPrecision(6)}`
        : "";
    }
    this.renderMcPanel();
  }

  private renderMcPanel(): void {
    const panel = this.mcPanel;
    panel.textContent = "";
    if (this.store.mcRunning) {
      panel.textContent = "Monte Carlo running...";
      return;
    }
    if (this.store.mcError) {
      const err = document.createElement("div");
      err.className = "mc-error";
      err.textContent = this.store.mcError;
      panel.appendChild(err);
      return;
    }
    const result = this.store.mcResult;
    if (!result) return;
    const limits = this.store.report?.large_noise_correct_limit ?? [];
    const title = document.createElement("div");
    title.textContent = `correct-decision rates at gamma=${result.gamma} (n=${result.n_samples})`;
    panel.appendChild(title);
    const bars = document.createElement("div");
    bars.className = "mc-bars";
    result.per_symbol_correct.forEach((value, i) => {
      bars.appendChild(this.mcBar(result, i, value, limits[i]));
    });
    panel.appendChild(bars);
  }

  private mcBar(
    result: McPayload,
    i: number,
    value: number | null,
    limit: number | undefined,
  ): HTMLElement {
    const wrap = document.createElement("div");
    wrap.className = "mc-bar-wrap";
    const bar = document.createElement("div");
    bar.className = "mc-bar";
    bar.style.background = pointColor(i);
    const v = value ?? 0;
    bar.style.height = `${Math.round(v * 120)}px`;
    bar.dataset.value = String(value);
    const [lo, hi] = result.per_symbol_error_ci95[i] ?? [0, 0];
    // Correct-rate interval is the mirrored error interval.
    const whisker = document.createElement("div");
    whisker.className = "mc-whisker";
    whisker.dataset.low = String(1 - hi);
    whisker.dataset.high = String(1 - lo);
    bar.appendChild(whisker);
    wrap.appendChild(bar);
    if (limit !== undefined) {
      const marker = document.createElement("div");
      marker.className = "mc-limit";
      marker.dataset.limit = String(limit);
      marker.style.bottom = `${Math.round(limit * 120)}px`;
      marker.title = `large-noise limit ${limit}`;
      wrap.appendChild(marker);
    }
    const label = document.createElement("div");
    label.className = "mc-label";
    label.textContent = result.labels[i] ?? `s${i}`;
    wrap.appendChild(label);
    return wrap;
  }

  private renderCompare(): void {
    const container = this.compareTable;
    container.textContent = "";
    if (this.compare.error) {
      const err = document.createElement("div");
      err.className = "compare-error";
      err.textContent = this.compare.error;
      container.appendChild(err);
      return;
    }
    const result = this.compare.result;
    if (!result) return;
    if (result.power_mismatch) {
      const warn = document.createElement("div");
      warn.className = "compare-warning";
      warn.textContent = "warning: designs do not share one average power budget";
      container.appendChild(warn);
    }
    const table = document.createElement("table");
    table.className = "compare";
    const head = document.createElement("tr");
    head.innerHTML =
      "<th>rank</th><th>name</th><th>status</th><th>J</th><th>a_min</th><th>b_max</th>";
    table.appendChild(head);
    result.ranked.forEach((entry, k) => {
      const row = document.createElement("tr");
      row.className = "ranked";
      row.dataset.name = entry.name;
      row.innerHTML =
        `<td>${k + 1}</td><td>${entry.name}</td><td>ranked</td>` +
        `<td>${entry.objective.toPrecision(6)}</td>` +
        `<td>${entry.report.a_min.toPrecision(4)}</td>` +
        `<td>${entry.report.b_max.toPrecision(4)}</td>`;
      table.appendChild(row);
    });
    result.rejected.forEach(({ name, reason }) => {
      const row = document.createElement("tr");
      row.className = "rejected";
      row.dataset.name = name;
      row.innerHTML = `<td></td><td>${name}</td><td>rejected: ${reason}</td><td></td><td></td><td></td>`;
      table.appendChild(row);
    });
    container.appendChild(table);
  }
}

export function mountDesigner(root: HTMLElement, apiBase?: string): DesignerApp {
  const params = new URLSearchParams(window.location.search);
  const base =
    apiBase ??
    params.get("api") ??
    `${window.location.protocol}//${window.location.hostname}:8787`;
  return new DesignerApp(root, base);
}

const rootElement = typeof document !== "undefined" ? document.getElementById("app") : null;
if (rootElement) {
  mountDesigner(rootElement);
}
