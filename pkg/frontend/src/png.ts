import { deflateSync } from "node:zlib";

export const PNG_SIGNATURE = Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);

const CRC_TABLE = buildCrcTable();

function buildCrcTable(): Uint32Array {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n += 1) {
    let c = n;
    for (let k = 0; k < 8; k += 1) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[n] = c >>> 0;
  }
  return table;
}

/** Standard CRC-32 as used by PNG chunk trailers. */
export function crc32(data: Uint8Array, seed = 0xffffffff): number {
  let c = seed >>> 0;
  for (let i = 0; i < data.length; i += 1) {
    c = CRC_TABLE[(c ^ data[i]) & 0xff] ^ (c >>> 8);
  }
  return (c ^ 0xffffffff) >>> 0;
}

/** Assemble one chunk: length, 4-char type, payload, CRC over type+payload. */
export function chunk(type: string, payload: Uint8Array): Buffer {
  const out = Buffer.alloc(12 + payload.length);
  out.writeUInt32BE(payload.length, 0);
  out.write(type, 4, "latin1");
  out.set(payload, 8);
  out.writeUInt32BE(crc32(out.subarray(4, 8 + payload.length)), 8 + payload.length);
  return out;
}

export function ihdrChunk(width: number, height: number): Buffer {
  const payload = Buffer.alloc(13);
  payload.writeUInt32BE(width, 0);
  payload.writeUInt32BE(height, 4);
  payload[8] = 8; // bit depth
  payload[9] = 2; // truecolor RGB
  payload[10] = 0; // deflate
  payload[11] = 0; // adaptive filtering
  payload[12] = 0; // no interlace
  return chunk("IHDR", payload);
}

/** Prefix every row with filter byte 0 (None) and deflate the result. */
export function compressRows(width: number, height: number, rgb: Uint8Array): Buffer {
  if (rgb.length !== 3 * width * height) {
    throw new Error(`pixel buffer has ${rgb.length} bytes, expected ${3 * width * height}`);
  }
  const stride = 3 * width;
  const raw = Buffer.alloc((stride + 1) * height);
  for (let y = 0; y < height; y += 1) {
    raw[y * (stride + 1)] = 0;
    raw.set(rgb.subarray(y * stride, (y + 1) * stride), y * (stride + 1) + 1);
  }
  return deflateSync(raw, { level: 6 });
}

/** Encode an 8-bit RGB buffer as a single-image PNG. */
export function encodePng(width: number, height: number, rgb: Uint8Array): Buffer {
  return Buffer.concat([
    PNG_SIGNATURE,
    ihdrChunk(width, height),
    chunk("IDAT", compressRows(width, height, rgb)),
    chunk("IEND", Buffer.alloc(0)),
  ]);
}
