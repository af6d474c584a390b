/** Minimal binary-PGM (P5) decode for canvas display. Decode only: the
 * browser never writes or processes rasters. */

export interface DecodedPgm {
  width: number;
  height: number;
  pixels: Uint8Array;
}

const WHITESPACE = new Set([0x20, 0x09, 0x0a, 0x0d, 0x0b, 0x0c]);

function readToken(data: Uint8Array, pos: number): [string, number] {
  while (pos < data.length) {
    const c = data[pos]!;
    if (WHITESPACE.has(c)) {
      pos += 1;
    } else if (c === 0x23 /* # */) {
      while (pos < data.length && data[pos] !== 0x0a && data[pos] !== 0x0d) pos += 1;
    } else {
      break;
    }
  }
  const start = pos;
  while (pos < data.length && !WHITESPACE.has(data[pos]!)) pos += 1;
  return [new TextDecoder().decode(data.subarray(start, pos)), pos];
}

export function decodePgm(data: Uint8Array): DecodedPgm {
  let pos = 0;
  let magic: string;
  [magic, pos] = readToken(data, pos);
  if (magic !== "P5") throw new Error(`not a binary PGM (magic ${magic})`);
  let tok: string;
  [tok, pos] = readToken(data, pos);
  const width = Number(tok);
  [tok, pos] = readToken(data, pos);
  const height = Number(tok);
  [tok, pos] = readToken(data, pos);
  const maxval = Number(tok);
  if (!Number.isInteger(width) || !Number.isInteger(height) || width < 1 || height < 1) {
    throw new Error("bad PGM dimensions");
  }
  if (!Number.isInteger(maxval) || maxval < 1 || maxval > 255) {
    throw new Error("unsupported PGM maxval");
  }
  pos += 1; // the single whitespace byte after maxval
  const n = width * height;
  if (data.length < pos + n) throw new Error("truncated PGM raster");
  return { width, height, pixels: data.subarray(pos, pos + n) };
}

/** Grayscale -> opaque RGBA. Label maps (tiny raw values) stretch to the
 * visible range; this is presentation only, the raw bytes stay intact. */
export function toRgba(img: DecodedPgm, stretch = false): Uint8ClampedArray<ArrayBuffer> {
  const out = new Uint8ClampedArray(img.width * img.height * 4);
  let scale = 1;
  if (stretch) {
    let max = 0;
    for (const v of img.pixels) if (v > max) max = v;
    scale = max > 0 ? 255 / max : 1;
  }
  for (let i = 0; i < img.pixels.length; i++) {
    const v = Math.round(img.pixels[i]! * scale);
    out[i * 4] = v;
    out[i * 4 + 1] = v;
    out[i * 4 + 2] = v;
    out[i * 4 + 3] = 255;
  }
  return out;
}
