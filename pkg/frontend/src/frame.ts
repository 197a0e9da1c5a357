import { readFileSync } from "node:fs";
import { endianness } from "node:os";

/** Raised when a byte stream does not follow the NLSF frame layout. */
export class FrameFormatError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "FrameFormatError";
  }
}

/**
 * One simulation snapshot.
 *
 * The binary layout is fixed little-endian: the magic string "NLSF",
 * a u32 format version (currently 1), a u32 dimension count, one u32
 * point count per axis, one f64 half width per axis, then the four
 * f64 run parameters epsilon, p, mass and t, followed by the field
 * values as row-major complex128 pairs (re, im).
 */
export interface Frame {
  dims: number;
  points: number[];
  halfWidths: number[];
  epsilon: number;
  p: number;
  mass: number;
  t: number;
  /** Interleaved (re, im) pairs, row major, 2 * prod(points) entries. */
  values: Float64Array;
}

const MAGIC = "NLSF";

/** Parse a frame from raw bytes. `name` labels error messages. */
export function decodeFrame(data: Uint8Array, name = "frame"): Frame {
  if (data.byteLength < 4 || String.fromCharCode(data[0], data[1], data[2], data[3]) !== MAGIC) {
    throw new FrameFormatError(`${name}: not an NLSF frame`);
  }
  if (data.byteLength < 12) {
    throw new FrameFormatError(`${name}: truncated header`);
  }
  const view = new DataView(data.buffer, data.byteOffset, data.byteLength);
  const version = view.getUint32(4, true);
  if (version !== 1) {
    throw new FrameFormatError(`${name}: unsupported frame version ${version}`);
  }
  const dims = view.getUint32(8, true);
  if (dims < 1 || dims > 16) {
    throw new FrameFormatError(`${name}: implausible dimension count ${dims}`);
  }
  let offset = 12;
  const headerEnd = offset + 4 * dims + 8 * dims + 32;
  if (data.byteLength < headerEnd) {
    throw new FrameFormatError(`${name}: truncated header`);
  }
  const points: number[] = [];
  for (let d = 0; d < dims; d += 1) {
    points.push(view.getUint32(offset, true));
    offset += 4;
  }
  const halfWidths: number[] = [];
  for (let d = 0; d < dims; d += 1) {
    halfWidths.push(view.getFloat64(offset, true));
    offset += 8;
  }
  const epsilon = view.getFloat64(offset, true);
  const p = view.getFloat64(offset + 8, true);
  const mass = view.getFloat64(offset + 16, true);
  const t = view.getFloat64(offset + 24, true);
  offset += 32;

  const count = points.reduce((a, b) => a * b, 1);
  const expected = 16 * count;
  const got = data.byteLength - offset;
  if (got !== expected) {
    throw new FrameFormatError(
      `${name}: payload length mismatch: expected ${expected} bytes, got ${got}`,
    );
  }
  const values = readDoubles(data, offset, 2 * count);
  return { dims, points, halfWidths, epsilon, p, mass, t, values };
}

/** Read a frame file from disk. */
export function readFrame(path: string): Frame {
  let raw: Buffer;
  try {
    raw = readFileSync(path);
  } catch (err) {
    throw new FrameFormatError(`${path}: unreadable frame: ${(err as Error).message}`);
  }
  return decodeFrame(raw, path);
}

/** Serialize a frame back to the exact byte layout `decodeFrame` reads. */
export function encodeFrame(frame: Frame): Buffer {
  const { dims, points, halfWidths, values } = frame;
  if (points.length !== dims || halfWidths.length !== dims) {
    throw new FrameFormatError("frame: points and halfWidths must each have dims entries");
  }
  const count = points.reduce((a, b) => a * b, 1);
  if (values.length !== 2 * count) {
    throw new FrameFormatError(
      `frame: values length ${values.length} does not match 2 * prod(points) = ${2 * count}`,
    );
  }
  const headerLen = 12 + 4 * dims + 8 * dims + 32;
  const out = Buffer.alloc(headerLen + 16 * count);
  out.write(MAGIC, 0, "latin1");
  out.writeUInt32LE(1, 4);
  out.writeUInt32LE(dims, 8);
  let offset = 12;
  for (const n of points) {
    out.writeUInt32LE(n, offset);
    offset += 4;
  }
  for (const w of halfWidths) {
    out.writeDoubleLE(w, offset);
    offset += 8;
  }
  out.writeDoubleLE(frame.epsilon, offset);
  out.writeDoubleLE(frame.p, offset + 8);
  out.writeDoubleLE(frame.mass, offset + 16);
  out.writeDoubleLE(frame.t, offset + 24);
  offset += 32;
  for (let i = 0; i < values.length; i += 1) {
    out.writeDoubleLE(values[i], offset + 8 * i);
  }
  return out;
}

/** Pointwise |value|^2 of the field, row major, prod(points) entries. */
export function modulusSquared(frame: Frame): Float64Array {
  const n = frame.values.length / 2;
  const out = new Float64Array(n);
  for (let i = 0; i < n; i += 1) {
    const re = frame.values[2 * i];
    const im = frame.values[2 * i + 1];
    out[i] = re * re + im * im;
  }
  return out;
}

/** True when two frames sit on the same grid (axes, extents, epsilon). */
export function sameGrid(a: Frame, b: Frame): boolean {
  if (a.dims !== b.dims) return false;
  for (let d = 0; d < a.dims; d += 1) {
    if (a.points[d] !== b.points[d]) return false;
    if (a.halfWidths[d] !== b.halfWidths[d]) return false;
  }
  return a.epsilon === b.epsilon;
}

function readDoubles(data: Uint8Array, offset: number, count: number): Float64Array {
  if (endianness() === "LE") {
    // aligned copy, then a zero-copy float view over the copy
    const bytes = new Uint8Array(count * 8);
    bytes.set(data.subarray(offset, offset + count * 8));
    return new Float64Array(bytes.buffer, 0, count);
  }
  const view = new DataView(data.buffer, data.byteOffset, data.byteLength);
  const out = new Float64Array(count);
  for (let i = 0; i < count; i += 1) {
    out[i] = view.getFloat64(offset + 8 * i, true);
  }
  return out;
}
