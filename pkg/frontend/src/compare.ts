/**
 * Candidate comparison model: saved designs plus a live screen result
 * that re-ranks whenever the trade-off slider moves. Ranking comes from
 * the service; the model only tracks inputs and the latest response.
 */

import { ApiClient, ConstellationPayload, ScreenPayload } from "./api";

export interface SavedDesign {
  name: string;
  constellation: ConstellationPayload;
}

export class CompareModel {
  designs: SavedDesign[] = [];
  lambda = 0.5;
  p0: number | null = null;
  result: ScreenPayload | null = null;
  error: string | null = null;

  private seq = 0;
  private pending = 0;
  private idleResolvers: (() => void)[] = [];

  constructor(
    private readonly api: ApiClient,
    private readonly onChange: () => void = () => {},
  ) {}

  add(name: string, constellation: ConstellationPayload): void {
    this.designs = this.designs.filter((d) => d.name !== name);
    this.designs.push({ name, constellation: { ...constellation, name } });
    void this.refresh();
  }

  remove(name: string): void {
    this.designs = this.designs.filter((d) => d.name !== name);
    if (this.designs.length === 0) {
      this.result = null;
      this.onChange();
      return;
    }
    void this.refresh();
  }

  setLambda(lambda: number): void {
    this.lambda = lambda;
    void this.refresh();
  }

  setP0(p0: number | null): void {
    this.p0 = p0;
    void this.refresh();
  }

  async refresh(): Promise<void> {
    if (this.designs.length === 0) {
      this.error = "save at least one design to compare";
      this.result = null;
      this.onChange();
      return;
    }
    const mySeq = ++this.seq;
    this.pending++;
    try {
      const result = await this.api.screen(
        this.designs.map((d) => d.constellation),
        this.lambda,
        this.p0,
      );
      if (mySeq === this.seq) {
        this.result = result;
        this.error = null;
      }
    } catch (err) {
      if (mySeq === this.seq) {
        this.error = err instanceof Error ? err.message : String(err);
      }
    } finally {
      this.pending--;
      this.onChange();
      this.settleIdle();
    }
  }

  whenIdle(): Promise<void> {
    if (this.pending === 0) return Promise.resolve();
    return new Promise((resolve) => this.idleResolvers.push(resolve));
  }

  private settleIdle(): void {
    if (this.pending === 0) {
      const resolvers = this.idleResolvers;
      this.idleResolvers = [];
      for (const resolve of resolvers) resolve();
    }
  }
}
