import { describe, expect, it } from "vitest";

import { decodePgm, toRgba } from "../src/pgm.js";

function bytes(header: string, raster: number[]): Uint8Array {
  const head = new TextEncoder().encode(header);
  const out = new Uint8Array(head.length + raster.length);
  out.set(head);
  out.set(raster, head.length);
  return out;
}

describe("decodePgm", () => {
  it("decodes a canonical 2x2 image", () => {
    const img = decodePgm(bytes("P5\n2 2\n255\n", [10, 20, 30, 40]));
    expect(img.width).toBe(2);
    expect(img.height).toBe(2);
    expect([...img.pixels]).toEqual([10, 20, 30, 40]);
  });

  it("tolerates comments and mixed whitespace", () => {
    const img = decodePgm(bytes("P5 # c\n#more\n 2\t1\n255\n", [0, 255]));
    expect(img.width).toBe(2);
    expect([...img.pixels]).toEqual([0, 255]);
  });

  it("rejects wrong magic", () => {
    expect(() => decodePgm(bytes("P6\n1 1\n255\n", [0]))).toThrow(/magic/);
  });

  it("rejects truncated rasters", () => {
    expect(() => decodePgm(bytes("P5\n2 2\n255\n", [1, 2]))).toThrow(/truncated/);
  });

  it("rejects bad maxval", () => {
    expect(() => decodePgm(bytes("P5\n1 1\n999\n", [0]))).toThrow(/maxval/);
  });
});

describe("toRgba", () => {
  it("maps gray to opaque rgba", () => {
    const img = decodePgm(bytes("P5\n2 1\n255\n", [0, 200]));
    const rgba = toRgba(img);
    expect([...rgba]).toEqual([0, 0, 0, 255, 200, 200, 200, 255]);
  });

  it("stretches label values for display only", () => {
    const img = decodePgm(bytes("P5\n3 1\n255\n", [0, 1, 2]));
    const rgba = toRgba(img, true);
    expect(rgba[4]).toBe(128); // label 1 of max 2
    expect(rgba[8]).toBe(255); // label 2 of max 2
    expect([...img.pixels]).toEqual([0, 1, 2]); // raw bytes untouched
  });
});
