import { inflateSync } from "node:zlib";

import { crc32, PNG_SIGNATURE } from "../src/png.js";

export interface ParsedChunk {
  type: string;
  data: Buffer;
  crcOk: boolean;
}

/** Walk the chunk list of a PNG/APNG buffer, checking every CRC. */
export function parseChunks(png: Buffer): ParsedChunk[] {
  if (!png.subarray(0, 8).equals(PNG_SIGNATURE)) {
    throw new Error("missing PNG signature");
  }
  const chunks: ParsedChunk[] = [];
  let offset = 8;
  while (offset < png.length) {
    const length = png.readUInt32BE(offset);
    const type = png.toString("latin1", offset + 4, offset + 8);
    const data = png.subarray(offset + 8, offset + 8 + length);
    const stored = png.readUInt32BE(offset + 8 + length);
    const computed = crc32(png.subarray(offset + 4, offset + 8 + length));
    chunks.push({ type, data: Buffer.from(data), crcOk: stored === computed });
    offset += 12 + length;
  }
  return chunks;
}

/**
 * Decode a truecolor, filter-None PNG written by this package back to
 * raw pixels. For an APNG this recovers the still image (first frame).
 */
export function decodePixels(png: Buffer): { width: number; height: number; rgb: Uint8Array } {
  const chunks = parseChunks(png);
  const ihdr = chunks.find((c) => c.type === "IHDR");
  if (!ihdr) throw new Error("no IHDR chunk");
  const width = ihdr.data.readUInt32BE(0);
  const height = ihdr.data.readUInt32BE(4);
  const idat = Buffer.concat(chunks.filter((c) => c.type === "IDAT").map((c) => c.data));
  const raw = inflateSync(idat);
  const stride = 3 * width;
  if (raw.length !== (stride + 1) * height) {
    throw new Error(`decompressed size ${raw.length}, expected ${(stride + 1) * height}`);
  }
  const rgb = new Uint8Array(stride * height);
  for (let y = 0; y < height; y += 1) {
    if (raw[y * (stride + 1)] !== 0) {
      throw new Error(`row ${y} uses filter ${raw[y * (stride + 1)]}, expected None`);
    }
    rgb.set(raw.subarray(y * (stride + 1) + 1, (y + 1) * (stride + 1)), y * stride);
  }
  return { width, height, rgb };
}

export function luma(rgb: Uint8Array, width: number, x: number, y: number): number {
  const i = 3 * (y * width + x);
  return 0.2126 * rgb[i] + 0.7152 * rgb[i + 1] + 0.0722 * rgb[i + 2];
}
