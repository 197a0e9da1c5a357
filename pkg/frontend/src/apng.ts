import { PNG_SIGNATURE, chunk, compressRows, ihdrChunk } from "./png.js";

/**
 * Assemble an animated PNG from same-sized RGB frames.
 *
 * The container is the standard APNG extension: an acTL chunk after
 * IHDR announces the frame count, each frame carries an fcTL control
 * chunk, the first frame doubles as the still image (IDAT), and later
 * frames store their compressed rows in fdAT chunks. Every animation
 * chunk consumes one slot in a single shared sequence counter.
 */
export function encodeApng(
  frames: Uint8Array[],
  width: number,
  height: number,
  fps: number,
): Buffer {
  if (frames.length === 0) {
    throw new Error("animation needs at least one frame");
  }
  if (!(fps >= 1)) {
    throw new Error(`fps must be at least 1, got ${fps}`);
  }
  const parts: Buffer[] = [Buffer.concat([PNG_SIGNATURE]), ihdrChunk(width, height)];

  const actl = Buffer.alloc(8);
  actl.writeUInt32BE(frames.length, 0);
  actl.writeUInt32BE(0, 4); // loop forever
  parts.push(chunk("acTL", actl));

  let seq = 0;
  frames.forEach((rgb, index) => {
    parts.push(chunk("fcTL", frameControl(seq, width, height, fps)));
    seq += 1;
    const compressed = compressRows(width, height, rgb);
    if (index === 0) {
      parts.push(chunk("IDAT", compressed));
    } else {
      const fdat = Buffer.alloc(4 + compressed.length);
      fdat.writeUInt32BE(seq, 0);
      fdat.set(compressed, 4);
      parts.push(chunk("fdAT", fdat));
      seq += 1;
    }
  });

  parts.push(chunk("IEND", Buffer.alloc(0)));
  return Buffer.concat(parts);
}

function frameControl(seq: number, width: number, height: number, fps: number): Buffer {
  const payload = Buffer.alloc(26);
  payload.writeUInt32BE(seq, 0);
  payload.writeUInt32BE(width, 4);
  payload.writeUInt32BE(height, 8);
  payload.writeUInt32BE(0, 12); // x offset
  payload.writeUInt32BE(0, 16); // y offset
  payload.writeUInt16BE(1, 20); // delay numerator
  payload.writeUInt16BE(Math.round(fps), 22); // delay denominator
  payload[24] = 0; // dispose: none
  payload[25] = 0; // blend: source
  return payload;
}
