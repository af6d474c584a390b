/** DOM wiring: connects the controls to CaseView and repaints on change. */

import { ApiClient } from "./api.js";
import { Point } from "./geometry.js";
import { decodePgm } from "./pgm.js";
import { drawHistogram, drawLine, drawStage } from "./render.js";
import { CaseView, reportRows } from "./state.js";

const SERVICE_URL =
  new URLSearchParams(location.search).get("service") ?? location.origin;

const api = new ApiClient(SERVICE_URL);
const view = new CaseView(api);

const $ = <T extends HTMLElement>(id: string): T =>
  document.getElementById(id) as T;

const stageCanvas = $<HTMLCanvasElement>("stage-canvas");
const overlayCanvas = $<HTMLCanvasElement>("overlay-canvas");
const histCanvas = $<HTMLCanvasElement>("hist-canvas");
const slider = $<HTMLInputElement>("stage-slider");
const stageLabel = $("stage-label");
const thumbs = $("thumbs");
const toasts = $("toasts");
const readoutEl = $("readout");
const commitErrorEl = $("commit-error");
const committedEl = $("committed");
const reportPanel = $("report-panel");
const dialogEl = $("report-dialog");
const dialogErrorEl = $("dialog-error");
const dialogHintEl = $("dialog-hint");

const SCALE = 3;
let dragging: 1 | 2 | null = null;

function canvasPoint(ev: MouseEvent): Point {
  const rect = overlayCanvas.getBoundingClientRect();
  return {
    x: ((ev.clientX - rect.left) / rect.width) * overlayCanvas.width / SCALE - 0.5,
    y: ((ev.clientY - rect.top) / rect.height) * overlayCanvas.height / SCALE - 0.5,
  };
}

overlayCanvas.addEventListener("mousedown", (ev) => {
  if (!view.line) return;
  const p = canvasPoint(ev);
  const d1 = Math.hypot(p.x - view.line.p1.x, p.y - view.line.p1.y);
  const d2 = Math.hypot(p.x - view.line.p2.x, p.y - view.line.p2.y);
  if (Math.min(d1, d2) > 8) return;
  dragging = d1 <= d2 ? 1 : 2;
});
window.addEventListener("mousemove", (ev) => {
  if (dragging) view.dragEndpoint(dragging, canvasPoint(ev));
});
window.addEventListener("mouseup", () => {
  dragging = null;
});

$("create-case").addEventListener("click", () => {
  const patientId = $<HTMLInputElement>("patient-id").value.trim();
  const name = $<HTMLInputElement>("patient-name").value.trim();
  const age = Number($<HTMLInputElement>("patient-age").value) || undefined;
  void view.createCase(patientId, name || undefined, age);
});

$<HTMLInputElement>("file-input").addEventListener("change", async (ev) => {
  const input = ev.target as HTMLInputElement;
  const file = input.files?.[0];
  if (!file) return;
  await view.uploadImage(new Uint8Array(await file.arrayBuffer()));
  await refreshStageImage();
  await refreshHistogram();
});

for (const step of [
  "median", "otsu", "morph-open", "morph-close", "watershed", "components",
  "run-default-pipeline",
]) {
  $(`step-${step}`).addEventListener("click", async () => {
    await view.runStep(step);
    await refreshStageImage();
    await refreshHistogram();
  });
}

slider.addEventListener("input", async () => {
  view.setActiveStage(Number(slider.value));
  await refreshStageImage();
});
$("nav-prev").addEventListener("click", async () => {
  view.navigate(-1);
  await refreshStageImage();
});
$("nav-next").addEventListener("click", async () => {
  view.navigate(1);
  await refreshStageImage();
});

$("place-line").addEventListener("click", () => view.placeDefaultLine());
$<HTMLInputElement>("calibration").addEventListener("input", (ev) => {
  view.setCalibrationText((ev.target as HTMLInputElement).value);
});
$("commit-manual").addEventListener("click", () => void view.commitManual());
$("commit-auto").addEventListener("click", () => void view.commitAuto());

$("open-report").addEventListener("click", () => view.openReportDialog());
$("dialog-yes").addEventListener("click", () => void view.confirmReport());
$("dialog-no").addEventListener("click", () => view.declineReport());

async function refreshStageImage(): Promise<void> {
  const name = view.activeStageName;
  if (!view.caseId || !name) return;
  try {
    const bytes = await api.stageBytes(view.caseId, name);
    const decoded = decodePgm(bytes);
    const kind = view.stages[view.activeStage]?.kind ?? "image";
    drawStage(stageCanvas, decoded, kind);
    stageCanvas.style.width = `${decoded.width * SCALE}px`;
    overlayCanvas.width = decoded.width * SCALE;
    overlayCanvas.height = decoded.height * SCALE;
    repaintOverlay();
  } catch (err) {
    view.toasts.push({ kind: "error", message: String(err) });
    render();
  }
}

async function refreshHistogram(): Promise<void> {
  if (!view.caseId) return;
  try {
    drawHistogram(histCanvas, await api.histogram(view.caseId));
  } catch {
    // histogram is decorative; stage errors already toast
  }
}

function repaintOverlay(): void {
  drawLine(overlayCanvas, view.line, view.readout, SCALE);
}

function render(): void {
  stageLabel.textContent = view.activeStageName ?? "no image";
  slider.max = String(Math.max(view.stages.length - 1, 0));
  slider.value = String(view.activeStage);
  thumbs.replaceChildren(
    ...view.stages.map((s, i) => {
      const el = document.createElement("button");
      el.className = i === view.activeStage ? "thumb active" : "thumb";
      el.textContent = s.name;
      el.addEventListener("click", async () => {
        view.setActiveStage(i);
        await refreshStageImage();
      });
      return el;
    }),
  );
  readoutEl.textContent = view.readout || "place the line to measure";
  commitErrorEl.textContent = view.commitError ?? "";
  committedEl.textContent = view.committedReadout
    ? `committed: ${view.committedReadout} (${view.committed!.method})`
    : "nothing committed yet";
  dialogEl.classList.toggle("hidden", view.dialog === "closed");
  dialogErrorEl.textContent = view.dialogError ?? "";
  dialogHintEl.textContent = view.dialogHint ?? "";
  renderReport();
  toasts.replaceChildren(
    ...view.toasts.map((t, i) => {
      const el = document.createElement("div");
      el.className = "toast";
      el.textContent = t.message;
      el.addEventListener("click", () => view.dismissToast(i));
      return el;
    }),
  );
  repaintOverlay();
}

function renderReport(): void {
  const r = view.report;
  if (!r) {
    reportPanel.replaceChildren();
    return;
  }
  reportPanel.replaceChildren(
    ...reportRows(r).map(([k, v]) => {
      const row = document.createElement("div");
      row.className = "report-row";
      const key = document.createElement("span");
      key.textContent = k;
      const value = document.createElement("strong");
      value.textContent = v;
      row.append(key, value);
      return row;
    }),
  );
}

view.onChange = render;
render();
