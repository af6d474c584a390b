/** Canvas drawing: stage raster, distance-line overlay, histogram bars.
 * Everything here is presentation; no pixel ever changes meaning. */

import { Point } from "./geometry.js";
import { DecodedPgm, toRgba } from "./pgm.js";

export function drawStage(
  canvas: HTMLCanvasElement,
  img: DecodedPgm,
  kind: string,
): void {
  canvas.width = img.width;
  canvas.height = img.height;
  const ctx = canvas.getContext("2d")!;
  const rgba = toRgba(img, kind === "labels");
  ctx.putImageData(new ImageData(rgba, img.width, img.height), 0, 0);
}

export function drawLine(
  overlay: HTMLCanvasElement,
  line: { p1: Point; p2: Point } | null,
  readout: string,
  scale: number,
): void {
  const ctx = overlay.getContext("2d")!;
  ctx.clearRect(0, 0, overlay.width, overlay.height);
  if (!line) return;
  const a = { x: (line.p1.x + 0.5) * scale, y: (line.p1.y + 0.5) * scale };
  const b = { x: (line.p2.x + 0.5) * scale, y: (line.p2.y + 0.5) * scale };
  ctx.strokeStyle = "#ffd000";
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.moveTo(a.x, a.y);
  ctx.lineTo(b.x, b.y);
  ctx.stroke();
  ctx.fillStyle = "#ffd000";
  for (const p of [a, b]) {
    ctx.beginPath();
    ctx.rect(p.x - 4, p.y - 4, 8, 8);
    ctx.fill();
  }
  ctx.font = "13px system-ui, sans-serif";
  const mid = { x: (a.x + b.x) / 2, y: (a.y + b.y) / 2 };
  const metrics = ctx.measureText(readout);
  ctx.fillStyle = "rgba(0, 0, 0, 0.7)";
  ctx.fillRect(mid.x + 6, mid.y - 18, metrics.width + 8, 18);
  ctx.fillStyle = "#ffd000";
  ctx.fillText(readout, mid.x + 10, mid.y - 5);
}

export function drawHistogram(canvas: HTMLCanvasElement, bins: number[]): void {
  const ctx = canvas.getContext("2d")!;
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#1b1f27";
  ctx.fillRect(0, 0, width, height);
  const peak = Math.max(...bins, 1);
  ctx.fillStyle = "#5aa7e0";
  const barWidth = width / 256;
  bins.forEach((count, v) => {
    if (!count) return;
    const barHeight = Math.max((count / peak) * (height - 4), 1);
    ctx.fillRect(v * barWidth, height - barHeight, Math.max(barWidth, 1), barHeight);
  });
}
