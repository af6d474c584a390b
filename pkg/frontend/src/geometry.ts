/** Line-endpoint math for the distance tool. The UI does no other
 * measurement math: everything medical comes from the service. */

export interface Point {
  x: number;
  y: number;
}

export function distance(p1: Point, p2: Point): number {
  return Math.hypot(p2.x - p1.x, p2.y - p1.y);
}

/** Endpoints snap to half-pixel positions. */
export function snapHalf(v: number): number {
  return Math.round(v * 2) / 2;
}

/** Pixel-center coordinates are valid in [-0.5, size - 0.5]. */
export function clampToImage(p: Point, width: number, height: number): Point {
  return {
    x: Math.min(Math.max(p.x, -0.5), width - 0.5),
    y: Math.min(Math.max(p.y, -0.5), height - 0.5),
  };
}

export function snapAndClamp(p: Point, width: number, height: number): Point {
  return clampToImage({ x: snapHalf(p.x), y: snapHalf(p.y) }, width, height);
}

/** Display rounding: two decimals, halves away from zero. */
export function round2(v: number): string {
  return (Math.round(v * 100) / 100).toFixed(2);
}

/** The live label next to the line, e.g. "5.00 px / 0.50 cm". Without a
 * usable calibration only the pixel part renders. */
export function formatReadout(pixels: number, cm: number | null): string {
  const px = `${round2(pixels)} px`;
  return cm === null ? px : `${px} / ${round2(cm)} cm`;
}

/** Calibration input parsing; returns null unless a positive finite
 * number was entered. */
export function parseCalibration(text: string): number | null {
  const v = Number(text.trim());
  return Number.isFinite(v) && v > 0 ? v : null;
}
