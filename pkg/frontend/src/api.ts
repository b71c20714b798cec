/** Thin HTTP client for the estimation service. No derived figures here:
 * responses pass through as the service shaped them.
 */

import type {
  CaseDoc,
  ErrorBody,
  EstimateRequest,
  EstimateResponse,
  GapResponse,
  PricebookDoc,
  RegionDoc,
} from "./types.js";

export interface HttpResponse {
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<HttpResponse>;

/** Error document returned by the service (4xx with a body). */
export class ApiError extends Error {
  readonly status: number;
  readonly type: string;
  readonly field?: string;

  constructor(status: number, body: ErrorBody["error"]) {
    super(body.message);
    this.status = status;
    this.type = body.type;
    this.field = body.field;
  }
}

/** Conditional override write lost the race; retry with currentVersion. */
export class VersionConflictError extends ApiError {
  readonly currentVersion: string;

  constructor(status: number, body: ErrorBody["error"]) {
    super(status, body);
    this.currentVersion = body.current_version ?? "";
  }
}

/** The service could not be reached at all (connection-level failure). */
export class ServiceUnreachableError extends Error {
  readonly cause: unknown;

  constructor(cause: unknown) {
    super("estimation service unreachable");
    this.cause = cause;
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike,
  ) {}

  estimate(request: EstimateRequest): Promise<EstimateResponse> {
    return this.send("POST", "/v1/estimate", request) as Promise<EstimateResponse>;
  }

  gap(request: EstimateRequest): Promise<GapResponse> {
    return this.send("POST", "/v1/gap", request) as Promise<GapResponse>;
  }

  async pricebook(): Promise<{ pricebook_version: string; pricebook: PricebookDoc }> {
    return (await this.send("GET", "/v1/pricebook")) as {
      pricebook_version: string;
      pricebook: PricebookDoc;
    };
  }

  async putOverrides(
    overrides: Record<string, number | string>,
    expectedVersion?: string,
  ): Promise<{ pricebook_version: string; overrides: Record<string, string> }> {
    const body: Record<string, unknown> = { overrides };
    if (expectedVersion !== undefined) body.expected_version = expectedVersion;
    return (await this.send("PUT", "/v1/pricebook/overrides", body)) as {
      pricebook_version: string;
      overrides: Record<string, string>;
    };
  }

  async regions(): Promise<RegionDoc[]> {
    const body = (await this.send("GET", "/v1/regions")) as { regions: RegionDoc[] };
    return body.regions;
  }

  async caseRequest(caseId: string): Promise<CaseDoc> {
    const body = (await this.send("GET", `/v1/cases/${caseId}`)) as { case: CaseDoc };
    return body.case;
  }

  private async send(method: string, path: string, payload?: unknown): Promise<unknown> {
    let resp: HttpResponse;
    try {
      resp = await this.fetchFn(this.baseUrl + path, {
        method,
        headers: payload === undefined ? undefined : { "content-type": "application/json" },
        body: payload === undefined ? undefined : JSON.stringify(payload),
      });
    } catch (cause) {
      throw new ServiceUnreachableError(cause);
    }
    const body = (await resp.json()) as ErrorBody | Record<string, unknown>;
    if (resp.status >= 400) {
      const err = (body as ErrorBody).error ?? {
        type: "UnknownError",
        message: `HTTP ${resp.status}`,
      };
      if (resp.status === 409) throw new VersionConflictError(resp.status, err);
      throw new ApiError(resp.status, err);
    }
    return body;
  }
}
