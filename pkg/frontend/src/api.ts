/**
 * Typed client for the ccl analysis service.
 *
 * The client performs no numerical work: every descriptor shown in the
 * UI comes straight from these endpoints.
 */

export interface ConstellationPayload {
  name?: string;
  dim?: number;
  points: number[][];
  priors?: number[];
  labels?: string[];
}

export interface ReportPayload {
  labels?: string[];
  angular_fraction: number[];
  a_min: number;
  burden: number[];
  b_max: number;
  p0: number;
  normalized_b_max: number;
  collapse_flags: boolean[];
  large_noise_correct_limit: number[];
  large_noise_error_limit: number[];
  avg_large_noise_correct_limit: number;
  average_power: number;
  min_distance: number;
  a_estimated: boolean;
}

export interface PatchPayload {
  kind: "empty" | "degenerate_ray" | "arc" | "full_circle";
  start_angle: number;
  arc_length: number;
  fraction: number;
}

export interface ConesPayload {
  patches: PatchPayload[];
  labels: string[];
}

export interface McPayload {
  gamma: number;
  labels: string[];
  avg_error: number;
  avg_correct: number;
  avg_error_ci95: [number, number];
  per_symbol_error: (number | null)[];
  per_symbol_correct: (number | null)[];
  per_symbol_error_ci95: [number, number][];
  per_symbol_counts: number[];
  n_samples: number;
  seed: number;
}

export interface ScreenEntryPayload {
  name: string;
  objective: number;
  report: ReportPayload;
}

export interface ScreenPayload {
  rejected: { name: string; reason: string }[];
  ranked: ScreenEntryPayload[];
  power_mismatch: boolean;
}

export interface CatalogEntryPayload {
  name: string;
  provenance: string;
  constellation: ConstellationPayload;
}

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
    readonly code: string | null = null,
    readonly field: string | null = null,
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private async request<T>(
    path: string,
    init?: RequestInit,
  ): Promise<T> {
    const resp = await fetch(this.baseUrl + path, init);
    const text = await resp.text();
    if (!resp.ok) {
      let code: string | null = null;
      let field: string | null = null;
      let message = `${resp.status} ${path}`;
      try {
        const data = JSON.parse(text);
        code = data.error ?? null;
        field = data.field ?? null;
        message = data.message ?? message;
      } catch {
        // non-JSON error body; keep the generic message
      }
      throw new ApiError(message, resp.status, code, field);
    }
    return JSON.parse(text) as T;
  }

  private post<T>(path: string, payload: unknown, signal?: AbortSignal): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
      signal,
    });
  }

  async health(): Promise<boolean> {
    try {
      const resp = await fetch(this.baseUrl + "/health");
      return resp.ok;
    } catch {
      return false;
    }
  }

  catalog(): Promise<{ entries: CatalogEntryPayload[] }> {
    return this.request("/catalog");
  }

  analyze(c: ConstellationPayload, signal?: AbortSignal): Promise<ReportPayload> {
    return this.post("/analyze", c, signal);
  }

  cones(c: ConstellationPayload, signal?: AbortSignal): Promise<ConesPayload> {
    return this.post("/cones", c, signal);
  }

  mc(
    c: ConstellationPayload,
    gamma: number,
    nSamples: number,
    seed = 2026,
    signal?: AbortSignal,
  ): Promise<McPayload> {
    return this.post(
      "/mc",
      { constellation: c, gamma, n_samples: nSamples, seed },
      signal,
    );
  }

  screen(
    candidates: ConstellationPayload[],
    lambda: number,
    p0: number | null = null,
  ): Promise<ScreenPayload> {
    const payload: Record<string, unknown> = { candidates, lambda };
    if (p0 !== null) payload.p0 = p0;
    return this.post("/screen", payload);
  }
}
