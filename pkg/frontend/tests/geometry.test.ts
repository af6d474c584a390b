import { describe, expect, it } from "vitest";

import {
  clampToImage,
  distance,
  formatReadout,
  parseCalibration,
  round2,
  snapAndClamp,
  snapHalf,
} from "../src/geometry.js";

describe("distance", () => {
  it("measures the 3-4-5 triangle", () => {
    expect(distance({ x: 0, y: 0 }, { x: 3, y: 4 })).toBe(5);
  });

  it("is zero for coincident points", () => {
    expect(distance({ x: 2.5, y: 7 }, { x: 2.5, y: 7 })).toBe(0);
  });

  it("allows subpixel endpoints", () => {
    expect(distance({ x: 1.5, y: 2 }, { x: 4.5, y: 6 })).toBe(5);
  });
});

describe("snapping", () => {
  it("snaps to half-pixel positions", () => {
    expect(snapHalf(3.3)).toBe(3.5);
    expect(snapHalf(3.2)).toBe(3);
    expect(snapHalf(-0.26)).toBe(-0.5);
  });
});

describe("clamping", () => {
  it("keeps endpoints inside the pixel-center bounds", () => {
    expect(clampToImage({ x: -50, y: 4 }, 128, 64)).toEqual({ x: -0.5, y: 4 });
    expect(clampToImage({ x: 500, y: 500 }, 128, 64)).toEqual({ x: 127.5, y: 63.5 });
  });

  it("snapAndClamp composes both", () => {
    expect(snapAndClamp({ x: 127.8, y: -3.1 }, 128, 64)).toEqual({ x: 127.5, y: -0.5 });
  });
});

describe("readout formatting", () => {
  it("renders px and cm with two decimals", () => {
    expect(formatReadout(5, 0.5)).toBe("5.00 px / 0.50 cm");
  });

  it("renders px only without calibration", () => {
    expect(formatReadout(12.3456, null)).toBe("12.35 px");
  });

  it("rounds halves up like the reports do", () => {
    expect(round2(0.125)).toBe("0.13");
    expect(round2(60.125)).toBe("60.13");
  });
});

describe("calibration parsing", () => {
  it("accepts positive finite numbers", () => {
    expect(parseCalibration("0.1")).toBe(0.1);
    expect(parseCalibration("  0.02 ")).toBe(0.02);
  });

  it("rejects everything else", () => {
    expect(parseCalibration("")).toBeNull();
    expect(parseCalibration("0")).toBeNull();
    expect(parseCalibration("-2")).toBeNull();
    expect(parseCalibration("abc")).toBeNull();
    expect(parseCalibration("Infinity")).toBeNull();
  });
});
