/**
 * Parameter-tuning session state. Slider movements are debounced into at
 * most one outstanding refine request; when parameters change while a
 * request is in flight, that response is discarded by sequence number and
 * the latest parameters are sent as soon as the wire is free.
 */

import type { ModelDocument, RefineParams } from "./types.js";

export const DEBOUNCE_MS = 250;

export const REFERENCE_PARAMS: RefineParams = { s1: -5, s2: 5, s3: 10, alpha: 0.5 };

/** Slider bounds; every combination they admit passes server validation. */
export const SLIDER_RANGES = {
  s1: { min: -20, max: -0.5, step: 0.5 },
  s2: { min: 0.5, max: 20, step: 0.5 },
  s3: { min: 1, max: 40, step: 0.5 },
  alpha: { min: 0, max: 1, step: 0.05 },
} as const;

export function paramsValid(p: RefineParams): boolean {
  return (
    Number.isFinite(p.s1) &&
    Number.isFinite(p.s2) &&
    Number.isFinite(p.s3) &&
    Number.isFinite(p.alpha) &&
    p.s1 < 0 &&
    p.s2 > 0 &&
    p.s3 > p.s2 &&
    p.alpha >= 0 &&
    p.alpha <= 1
  );
}

export function isReferenceConfig(p: RefineParams): boolean {
  return (
    p.s1 === REFERENCE_PARAMS.s1 &&
    p.s2 === REFERENCE_PARAMS.s2 &&
    p.s3 === REFERENCE_PARAMS.s3 &&
    p.alpha === REFERENCE_PARAMS.alpha
  );
}

export interface RefineClient {
  refine(courseId: string, params: RefineParams): Promise<ModelDocument>;
}

export interface SessionState {
  courseId: string;
  params: RefineParams;
  model: ModelDocument | null;
  pending: boolean;
  error: unknown;
}

type Listener = (state: SessionState) => void;

export class TuningSession {
  private current: RefineParams;
  private seq = 0;
  private appliedSeq = 0;
  private inFlight = false;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private listeners: Listener[] = [];
  private waiters: Array<() => void> = [];
  private latestModel: ModelDocument | null = null;
  private lastError: unknown = null;

  constructor(
    private readonly client: RefineClient,
    readonly courseId: string,
    initial: RefineParams = REFERENCE_PARAMS,
    private readonly debounceMs: number = DEBOUNCE_MS,
  ) {
    if (!paramsValid(initial)) {
      throw new RangeError(`initial parameters out of range: ${JSON.stringify(initial)}`);
    }
    this.current = { ...initial };
  }

  get params(): RefineParams {
    return { ...this.current };
  }

  get model(): ModelDocument | null {
    return this.latestModel;
  }

  get error(): unknown {
    return this.lastError;
  }

  get pending(): boolean {
    return this.timer !== null || this.inFlight;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  /** Resolves once no refine request is scheduled or on the wire. */
  idle(): Promise<void> {
    if (!this.pending) return Promise.resolve();
    return new Promise((resolve) => this.waiters.push(resolve));
  }

  setParameters(change: Partial<RefineParams>): void {
    const next = { ...this.current, ...change };
    if (!paramsValid(next)) {
      throw new RangeError(`parameters out of range: ${JSON.stringify(next)}`);
    }
    this.current = next;
    this.seq += 1;
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      this.flush();
    }, this.debounceMs);
    this.notify();
  }

  /** Issue a request for the current parameters without the debounce wait. */
  refineNow(): void {
    this.seq += 1;
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.flush();
  }

  private flush(): void {
    if (this.inFlight || this.appliedSeq === this.seq) {
      this.settle();
      return;
    }
    const seq = this.seq;
    const params = { ...this.current };
    this.inFlight = true;
    this.notify();
    this.client.refine(this.courseId, params).then(
      (model) => this.finish(seq, model, null),
      (err: unknown) => this.finish(seq, null, err ?? new Error("refine failed")),
    );
  }

  private finish(seq: number, model: ModelDocument | null, err: unknown): void {
    this.inFlight = false;
    if (seq === this.seq) {
      this.appliedSeq = seq;
      if (model !== null) {
        this.latestModel = model;
        this.lastError = null;
      } else {
        this.lastError = err;
      }
    }
    // superseded while in flight: the response is stale, go again right away
    if (this.timer === null && this.appliedSeq !== this.seq) {
      this.flush();
      return;
    }
    this.settle();
  }

  private notify(): void {
    const state: SessionState = {
      courseId: this.courseId,
      params: this.params,
      model: this.latestModel,
      pending: this.pending,
      error: this.lastError,
    };
    for (const listener of [...this.listeners]) listener(state);
  }

  private settle(): void {
    this.notify();
    if (!this.pending) {
      const done = this.waiters;
      this.waiters = [];
      for (const resolve of done) resolve();
    }
  }
}
