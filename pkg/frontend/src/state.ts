/** View model for one case: stage strip, distance line, calibration,
 * report dialog. Pure state transitions + service calls; rendering is
 * someone else's job. The only math performed locally is the live
 * endpoint-distance readout; every stored medical value is whatever the
 * service returned.
 */

import { ApiClient, ApiError, Measurement, ReportDoc, StageInfo } from "./api.js";
import {
  Point,
  distance,
  formatReadout,
  parseCalibration,
  snapAndClamp,
} from "./geometry.js";

export interface Toast {
  kind: "error" | "info";
  message: string;
}

export type DialogState = "closed" | "open" | "busy";

export class CaseView {
  caseId: string | null = null;
  patientId = "";
  stages: StageInfo[] = [];
  activeStage = 0;
  imageWidth = 0;
  imageHeight = 0;

  line: { p1: Point; p2: Point } | null = null;
  calibrationText = "";
  /** Live label, recomputed locally on every drag: px, and cm when a
   * calibration is entered. */
  readout = "";
  /** Inline validation message under the commit button. */
  commitError: string | null = null;
  committed: Measurement | null = null;

  dialog: DialogState = "closed";
  dialogHint: string | null = null;
  dialogError: string | null = null;
  report: ReportDoc | null = null;

  toasts: Toast[] = [];
  onChange: () => void = () => {};

  constructor(private readonly api: ApiClient) {}

  private notify() {
    this.onChange();
  }

  private toast(message: string) {
    this.toasts.push({ kind: "error", message });
    this.notify();
  }

  dismissToast(index: number) {
    this.toasts.splice(index, 1);
    this.notify();
  }

  // -- case lifecycle ------------------------------------------------------

  async createCase(patientId: string, name?: string, age?: number): Promise<void> {
    try {
      const { case_id } = await this.api.createCase({
        patient_id: patientId,
        ...(name ? { name } : {}),
        ...(age ? { age_years: age } : {}),
      });
      this.caseId = case_id;
      this.patientId = patientId;
      this.stages = [];
      this.activeStage = 0;
      this.line = null;
      this.committed = null;
      this.report = null;
      this.notify();
    } catch (err) {
      this.toast(describe(err));
    }
  }

  async uploadImage(pgm: Uint8Array): Promise<void> {
    if (!this.caseId) return this.toast("create a case first");
    try {
      const { width, height } = await this.api.uploadImage(this.caseId, pgm);
      this.imageWidth = width;
      this.imageHeight = height;
      this.stages = [{ name: "original", kind: "image" }];
      this.activeStage = 0;
      this.line = null;
      this.committed = null;
      this.report = null;
      this.recomputeReadout();
      this.notify();
    } catch (err) {
      this.toast(describe(err));
    }
  }

  async runStep(step: string, params: Record<string, unknown> = {}): Promise<void> {
    if (!this.caseId) return this.toast("create a case first");
    try {
      await this.api.runStep(this.caseId, step, params);
      const detail = await this.api.caseDetail(this.caseId);
      this.stages = detail.stages;
      this.activeStage = this.stages.length - 1;
      this.notify();
    } catch (err) {
      this.toast(describe(err));
    }
  }

  // -- stage navigation ------------------------------------------------------

  /** Move the strip; clamped at both ends. */
  navigate(direction: number): void {
    this.setActiveStage(this.activeStage + direction);
  }

  setActiveStage(index: number): void {
    const last = Math.max(this.stages.length - 1, 0);
    this.activeStage = Math.min(Math.max(index, 0), last);
    this.notify();
  }

  get activeStageName(): string | null {
    return this.stages[this.activeStage]?.name ?? null;
  }

  // -- distance line -----------------------------------------------------------

  /** Drop a default line across the middle of the image. */
  placeDefaultLine(): void {
    if (!this.imageWidth) return;
    const y = snapAndClamp(
      { x: 0, y: this.imageHeight / 2 },
      this.imageWidth,
      this.imageHeight,
    ).y;
    this.line = {
      p1: { x: Math.round(this.imageWidth * 0.25), y },
      p2: { x: Math.round(this.imageWidth * 0.75), y },
    };
    this.recomputeReadout();
    this.notify();
  }

  /** Drag one endpoint. Purely local: snap, clamp, refresh the readout. */
  dragEndpoint(which: 1 | 2, to: Point): void {
    if (!this.line) return;
    const snapped = snapAndClamp(to, this.imageWidth, this.imageHeight);
    if (which === 1) this.line.p1 = snapped;
    else this.line.p2 = snapped;
    this.recomputeReadout();
    this.notify();
  }

  setCalibrationText(text: string): void {
    this.calibrationText = text;
    this.commitError = null;
    this.recomputeReadout();
    this.notify();
  }

  get calibration(): number | null {
    return parseCalibration(this.calibrationText);
  }

  get linePixels(): number | null {
    return this.line ? distance(this.line.p1, this.line.p2) : null;
  }

  private recomputeReadout(): void {
    if (!this.line) {
      this.readout = "";
      return;
    }
    const px = distance(this.line.p1, this.line.p2);
    const cal = this.calibration;
    this.readout = formatReadout(px, cal === null ? null : px * cal);
  }

  // -- committing a measurement ---------------------------------------------------

  async commitManual(): Promise<void> {
    if (!this.caseId) return this.toast("create a case first");
    if (!this.line) {
      this.commitError = "place the distance line first";
      this.notify();
      return;
    }
    const cal = this.calibration;
    if (cal === null) {
      this.commitError = "enter a positive cm-per-pixel calibration";
      this.notify();
      return;
    }
    try {
      this.committed = await this.api.setMeasurement(this.caseId, {
        mode: "manual",
        cm_per_pixel: cal,
        line: {
          x1: this.line.p1.x,
          y1: this.line.p1.y,
          x2: this.line.p2.x,
          y2: this.line.p2.y,
        },
      });
      this.commitError = null;
      this.report = null;
      this.notify();
    } catch (err) {
      this.commitError = describe(err);
      this.notify();
    }
  }

  async commitAuto(): Promise<void> {
    if (!this.caseId) return this.toast("create a case first");
    const cal = this.calibration;
    if (cal === null) {
      this.commitError = "enter a positive cm-per-pixel calibration";
      this.notify();
      return;
    }
    try {
      this.committed = await this.api.setMeasurement(this.caseId, {
        mode: "auto",
        cm_per_pixel: cal,
      });
      this.commitError = null;
      this.report = null;
      this.notify();
    } catch (err) {
      this.commitError = describe(err);
      this.notify();
    }
  }

  /** The committed panel line, formatted exactly like the live readout. */
  get committedReadout(): string | null {
    if (!this.committed) return null;
    return formatReadout(this.committed.pixels, this.committed.cm);
  }

  // -- report dialog ------------------------------------------------------------

  /** Open the confirmation dialog; without a committed measurement it
   * stays closed and shows the hint instead. */
  openReportDialog(): void {
    if (!this.committed) {
      this.dialogHint = "commit a measurement before generating a report";
      this.notify();
      return;
    }
    this.dialogHint = null;
    this.dialogError = null;
    this.dialog = "open";
    this.notify();
  }

  /** "Yes": the one and only place a report request leaves the browser. */
  async confirmReport(): Promise<void> {
    if (this.dialog !== "open" || !this.caseId) return;
    this.dialog = "busy";
    this.notify();
    try {
      this.report = await this.api.getReport(this.caseId, true);
      this.dialog = "closed";
      this.notify();
    } catch (err) {
      this.dialog = "open";
      this.dialogError = describe(err);
      this.notify();
    }
  }

  /** "No": close without any network traffic. */
  declineReport(): void {
    this.dialog = "closed";
    this.notify();
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) {
    return err.field ? `${err.message} (${err.field})` : err.message;
  }
  return err instanceof Error ? err.message : String(err);
}

/** The report panel rows, straight from the service document. */
export function reportRows(r: ReportDoc): [string, string][] {
  return [
    ["Patient", r.record.patient_id],
    ["Name", r.record.name ?? "-"],
    ["Age", r.record.age_years === null ? "-" : String(r.record.age_years)],
    ["Generated", r.generated_at],
    ["Diameter", formatReadout(r.diameter_px, r.diameter_cm)],
    ["Method", r.method],
    ["Calibration", `${r.cm_per_pixel} cm/px`],
    ["Type", r.tumor_type],
    ["Risk stage", r.risk_stage],
    ["T-category", r.t_category ?? "-"],
  ];
}
