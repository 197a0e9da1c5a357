import { createHash } from "node:crypto";
import { readFileSync } from "node:fs";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { decodeFrame, encodeFrame, FrameFormatError, modulusSquared, readFrame, sameGrid } from "../src/frame.js";

const FIXTURES = join(fileURLToPath(new URL(".", import.meta.url)), "fixtures");
const meta = JSON.parse(readFileSync(join(FIXTURES, "meta.json"), "utf8"));
const PROFILE = join(FIXTURES, "ground", "profile.nlsf");
const RUN_FRAME = join(FIXTURES, "run", "frames", "frame_000000.nlsf");

describe("frame reader", () => {
  it("parses the header of a frame produced by the simulation side", () => {
    const frame = readFrame(PROFILE);
    expect(frame.dims).toBe(meta.profile.dims);
    expect(frame.points).toEqual(meta.profile.points);
    expect(frame.halfWidths).toEqual(meta.profile.half_widths);
    expect(frame.epsilon).toBe(meta.profile.epsilon);
    expect(frame.p).toBe(meta.profile.p);
    expect(frame.mass).toBe(meta.profile.mass);
    expect(frame.t).toBe(meta.profile.t);
    expect(frame.values.length).toBe(2 * meta.profile.points[0] * meta.profile.points[1]);
  });

  it("reads payload values bit-exactly (spot checks against recorded doubles)", () => {
    for (const [key, file] of [
      ["profile", PROFILE],
      ["first_run_frame", RUN_FRAME],
    ] as const) {
      const frame = readFrame(file);
      for (const spot of meta[key].spot_values) {
        expect(frame.values[2 * spot.index]).toBe(spot.re);
        expect(frame.values[2 * spot.index + 1]).toBe(spot.im);
      }
    }
  });

  it("round-trips a cross-language frame to the identical bytes", () => {
    const raw = readFileSync(PROFILE);
    expect(raw.length).toBe(meta.profile.bytes);
    expect(createHash("sha256").update(raw).digest("hex")).toBe(meta.profile.sha256);
    const encoded = encodeFrame(decodeFrame(raw, "profile"));
    expect(encoded.length).toBe(raw.length);
    expect(encoded.equals(raw)).toBe(true);
  });

  it("round-trips every run frame byte for byte", () => {
    for (const name of ["frame_000000.nlsf", "frame_000002.nlsf", "frame_000004.nlsf", "frame_000005.nlsf"]) {
      const raw = readFileSync(join(FIXTURES, "run", "frames", name));
      expect(encodeFrame(decodeFrame(raw, name)).equals(raw)).toBe(true);
    }
  });

  it("computes |field|^2 and finds the bump where the run placed it", () => {
    const frame = readFrame(RUN_FRAME);
    const msq = modulusSquared(frame);
    let best = 0;
    for (let i = 1; i < msq.length; i += 1) {
      if (msq[i] > msq[best]) best = i;
    }
    const [n1, n2] = frame.points;
    expect([Math.floor(best / n2), best % n2]).toEqual(meta.first_run_frame.peak_index);
    expect(n1 * n2).toBe(msq.length);
  });

  it("rejects bytes that do not start with the magic string", () => {
    const raw = Buffer.from(readFileSync(PROFILE));
    raw[0] = 0x58;
    expect(() => decodeFrame(raw, "bad")).toThrow(FrameFormatError);
    expect(() => decodeFrame(raw, "bad")).toThrow(/not an NLSF frame/);
  });

  it("rejects unsupported versions", () => {
    const raw = Buffer.from(readFileSync(PROFILE));
    raw.writeUInt32LE(2, 4);
    expect(() => decodeFrame(raw, "v2")).toThrow(/unsupported frame version 2/);
  });

  it("rejects truncated headers and mismatched payloads", () => {
    const raw = readFileSync(PROFILE);
    expect(() => decodeFrame(raw.subarray(0, 40), "cut")).toThrow(/truncated header/);
    expect(() => decodeFrame(raw.subarray(0, raw.length - 8), "short")).toThrow(
      /payload length mismatch/,
    );
    const padded = Buffer.concat([raw, Buffer.alloc(16)]);
    expect(() => decodeFrame(padded, "long")).toThrow(/payload length mismatch/);
  });

  it("reports unreadable files as frame errors", () => {
    expect(() => readFrame(join(FIXTURES, "no-such-file.nlsf"))).toThrow(FrameFormatError);
    expect(() => readFrame(join(FIXTURES, "no-such-file.nlsf"))).toThrow(/unreadable frame/);
  });

  it("compares grids across frames", () => {
    const a = readFrame(PROFILE);
    const b = readFrame(RUN_FRAME);
    expect(sameGrid(a, a)).toBe(true);
    expect(sameGrid(a, b)).toBe(true); // same grid and epsilon, different payloads
    const shrunk = { ...a, points: [16, 32], values: a.values.subarray(0, 2 * 16 * 32) };
    expect(sameGrid(a, shrunk)).toBe(false);
    const stretched = { ...a, halfWidths: [6, 7] };
    expect(sameGrid(a, stretched)).toBe(false);
    const reEps = { ...a, epsilon: 0.5 };
    expect(sameGrid(a, reEps)).toBe(false);
  });

  it("encode rejects inconsistent shapes", () => {
    const frame = readFrame(PROFILE);
    expect(() => encodeFrame({ ...frame, points: [32] })).toThrow(FrameFormatError);
    expect(() => encodeFrame({ ...frame, values: frame.values.subarray(0, 10) })).toThrow(
      /does not match/,
    );
  });
});
