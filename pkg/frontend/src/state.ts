import { ApiClient, ApiError, ServiceUnreachableError } from "./api";
import { RequestGate } from "./requests";
import type {
  EstimateDoc,
  EstimateRequest,
  FlagsDoc,
  GapDoc,
  GapResponse,
  SpecDoc,
} from "./types";

/** An estimate/gap pair together with the exact request that produced it
 * and the pricebook version it was priced against.
 */
export interface ScenarioResult {
  request: EstimateRequest;
  estimate: EstimateDoc;
  gap: GapDoc;
  pricebookVersion: string;
}

export interface Scenario {
  label: string;
  result: ScenarioResult;
  pinned: boolean;
}

export type SessionStatus = "idle" | "loading" | "ready" | "unreachable" | "rejected";

function clone<T>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}

/**
 * Holds the editable inputs, the last result that matches them, and any
 * pinned snapshots. The core invariant: `result` is only ever replaced
 * together with the request that produced it, and only when no newer
 * request has been issued since. Stale responses are dropped, so the
 * figures on screen always correspond to the inputs on screen.
 */
export class WhatIfSession {
  spec: SpecDoc;
  region: string | undefined;
  flags: Partial<FlagsDoc>;
  /* Session-only price experiments; sent inline with each request and
     never written to the shared store unless saveOverrides is called. */
  overrides: Record<string, string>;

  status: SessionStatus = "idle";
  lastError: string | null = null;
  result: ScenarioResult | null = null;

  private readonly api: ApiClient;
  private readonly gate = new RequestGate();
  private readonly scenarios: Scenario[] = [];

  constructor(api: ApiClient, spec: SpecDoc, region?: string) {
    this.api = api;
    this.spec = clone(spec);
    this.region = region;
    this.flags = {};
    this.overrides = {};
  }

  /** Request document for the current inputs plus the session overlay. */
  buildRequest(): EstimateRequest {
    const req: EstimateRequest = { spec: clone(this.spec) };
    if (this.region !== undefined) req.region = this.region;
    if (Object.keys(this.flags).length > 0) req.flags = clone(this.flags);
    if (Object.keys(this.overrides).length > 0) {
      req.overrides = clone(this.overrides);
    }
    return req;
  }

  setSpec(patch: Partial<SpecDoc>): void {
    this.spec = { ...this.spec, ...clone(patch) };
  }

  setRegion(region: string | undefined): void {
    this.region = region;
  }

  setFlags(patch: Partial<FlagsDoc>): void {
    this.flags = { ...this.flags, ...patch };
  }

  setOverride(materialId: string, price: string): void {
    this.overrides = { ...this.overrides, [materialId]: price };
  }

  clearOverride(materialId: string): void {
    const next = { ...this.overrides };
    delete next[materialId];
    this.overrides = next;
  }

  /**
   * Re-estimate the current inputs. Each call supersedes any in-flight
   * one; a response is committed only if it is still the latest, so an
   * out-of-order arrival can never clobber newer figures.
   */
  async refresh(): Promise<ScenarioResult | null> {
    const ticket = this.gate.next();
    const request = this.buildRequest();
    this.status = "loading";
    let body: GapResponse;
    try {
      body = await this.api.gap(request);
    } catch (err) {
      if (!this.gate.isCurrent(ticket)) return this.result;
      if (err instanceof ServiceUnreachableError) {
        // Inputs stay editable; only the figures are marked unusable.
        this.status = "unreachable";
        this.lastError = err.message;
        return this.result;
      }
      if (err instanceof ApiError) {
        this.status = "rejected";
        this.lastError = err.field ? `${err.message} (${err.field})` : err.message;
        return this.result;
      }
      throw err;
    }
    if (!this.gate.isCurrent(ticket)) return this.result;
    this.result = {
      request,
      estimate: body.estimate,
      gap: body.gap,
      pricebookVersion: body.pricebook_version,
    };
    this.status = "ready";
    this.lastError = null;
    return this.result;
  }

  /** Snapshot the current inputs+result for side-by-side comparison. */
  pin(label: string): Scenario {
    if (this.result === null) {
      throw new Error("nothing to pin: no estimate for the current inputs");
    }
    const scenario: Scenario = { label, result: clone(this.result), pinned: true };
    this.scenarios.push(scenario);
    return scenario;
  }

  pinned(): readonly Scenario[] {
    return this.scenarios.filter((s) => s.pinned);
  }

  unpin(label: string): void {
    const hit = this.scenarios.find((s) => s.label === label && s.pinned);
    if (hit) hit.pinned = false;
  }

  /** Load one of the published worked examples into the editor. */
  async loadCase(caseId: string): Promise<void> {
    const doc = await this.api.caseRequest(caseId);
    const req = doc.request;
    this.spec = clone(req.spec);
    this.region = req.region;
    this.flags = req.flags ? clone(req.flags) : {};
  }

  /**
   * Persist the session overlay to the shared pricebook. This is the
   * only path that mutates shared state, and it is always explicit.
   */
  async saveOverrides(expectedVersion?: string): Promise<string> {
    const body = await this.api.putOverrides(this.overrides, expectedVersion);
    this.overrides = {};
    return body.pricebook_version;
  }
}
