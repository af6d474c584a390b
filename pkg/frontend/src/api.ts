/** Typed client over the case service HTTP API. The fetch implementation
 * is injectable so tests can count and stub network traffic. */

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface PatientInput {
  patient_id: string;
  name?: string;
  age_years?: number;
}

export interface StageInfo {
  name: string;
  kind: "image" | "mask" | "labels";
}

export interface CaseDetail {
  case_id: string;
  patient_id: string;
  created_at: string;
  stages: StageInfo[];
  has_measurement: boolean;
  has_report: boolean;
  width?: number;
  height?: number;
  measurement: Measurement | null;
  calibration: number | null;
}

export interface Measurement {
  pixels: number;
  cm: number;
  method: "auto" | "manual";
  component_area_px: number | null;
}

export interface StepResult {
  step: string;
  stage?: string;
  stages?: string[];
  threshold?: number;
  regions?: number;
  [key: string]: unknown;
}

export interface ReportDoc {
  record: { patient_id: string; name: string | null; age_years: number | null };
  generated_at: string;
  diameter_px: number;
  diameter_cm: number;
  method: string;
  cm_per_pixel: number;
  tumor_type: string;
  risk_stage: string;
  t_category?: string;
  provenance: { name: string; params: Record<string, unknown> }[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly errorCode: string,
    message: string,
    readonly field?: string,
  ) {
    super(message);
  }
}

async function asApiError(resp: Response): Promise<ApiError> {
  let code = "http_error";
  let message = `${resp.status} ${resp.statusText}`;
  let field: string | undefined;
  try {
    const body = await resp.json();
    if (body && typeof body.error_code === "string") {
      code = body.error_code;
      message = body.message ?? message;
      field = body.field;
    }
  } catch {
    // non-JSON error body; keep the generic message
  }
  return new ApiError(resp.status, code, message, field);
}

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!resp.ok) throw await asApiError(resp);
    return (await resp.json()) as T;
  }

  createCase(patient: PatientInput): Promise<{ case_id: string }> {
    return this.json("/cases", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(patient),
    });
  }

  listCases(): Promise<{ cases: CaseDetail[] }> {
    return this.json("/cases");
  }

  caseDetail(caseId: string): Promise<CaseDetail> {
    return this.json(`/cases/${caseId}`);
  }

  uploadImage(caseId: string, pgm: Uint8Array): Promise<{ width: number; height: number }> {
    return this.json(`/cases/${caseId}/image`, {
      method: "POST",
      headers: { "content-type": "application/octet-stream" },
      body: pgm as unknown as BodyInit,
    });
  }

  runStep(
    caseId: string,
    step: string,
    params: Record<string, unknown> = {},
  ): Promise<StepResult> {
    return this.json(`/cases/${caseId}/steps/${step}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(params),
    });
  }

  async stageBytes(caseId: string, name: string): Promise<Uint8Array> {
    const resp = await this.fetchImpl(`${this.baseUrl}/cases/${caseId}/stages/${name}`);
    if (!resp.ok) throw await asApiError(resp);
    return new Uint8Array(await resp.arrayBuffer());
  }

  histogram(caseId: string): Promise<number[]> {
    return this.json(`/cases/${caseId}/histogram`);
  }

  setMeasurement(
    caseId: string,
    body: {
      mode: "auto" | "manual";
      cm_per_pixel: number;
      line?: { x1: number; y1: number; x2: number; y2: number };
      min_area?: number;
    },
  ): Promise<Measurement> {
    return this.json(`/cases/${caseId}/measurement`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getReport(caseId: string, generate: boolean): Promise<ReportDoc> {
    return this.json(`/cases/${caseId}/report?generate=${generate}`);
  }
}
