import { describe, expect, it } from "vitest";

import { Raster, textWidth } from "../src/raster.js";

describe("raster primitives", () => {
  it("starts filled with the background color", () => {
    const r = new Raster(4, 3, [10, 20, 30]);
    expect(r.get(0, 0)).toEqual([10, 20, 30]);
    expect(r.get(3, 2)).toEqual([10, 20, 30]);
    expect(r.data.length).toBe(36);
  });

  it("ignores writes outside the canvas", () => {
    const r = new Raster(4, 4);
    r.set(-1, 0, [0, 0, 0]);
    r.set(0, 7, [0, 0, 0]);
    r.blend(9, 9, [0, 0, 0], 1);
    expect(r.data.every((v) => v === 255)).toBe(true);
  });

  it("draws lines through both endpoints", () => {
    const r = new Raster(10, 10);
    r.line(1, 1, 8, 4, [0, 0, 0]);
    expect(r.get(1, 1)).toEqual([0, 0, 0]);
    expect(r.get(8, 4)).toEqual([0, 0, 0]);
    let dark = 0;
    for (let y = 0; y < 10; y += 1) {
      for (let x = 0; x < 10; x += 1) {
        if (r.get(x, y)[0] === 0) dark += 1;
      }
    }
    expect(dark).toBeGreaterThanOrEqual(8); // at least one pixel per column
  });

  it("blends with clamped alpha", () => {
    const r = new Raster(2, 1, [100, 100, 100]);
    r.blend(0, 0, [200, 0, 100], 0.5);
    expect(r.get(0, 0)).toEqual([150, 50, 100]);
    r.blend(1, 0, [0, 0, 0], 4); // clamps to 1
    expect(r.get(1, 0)).toEqual([0, 0, 0]);
  });

  it("renders text ink for every supported character", () => {
    const s = "0123456789.-+=/epstxromav ";
    const r = new Raster(textWidth(s) + 2, 9);
    r.text(1, 1, s, [0, 0, 0]);
    let dark = 0;
    for (let i = 0; i < r.data.length; i += 3) {
      if (r.data[i] === 0) dark += 1;
    }
    // every glyph except the space contributes several pixels
    expect(dark).toBeGreaterThan(5 * (s.length - 1));
  });

  it("rejects degenerate sizes", () => {
    expect(() => new Raster(0, 5)).toThrow(/positive integers/);
    expect(() => new Raster(4.5, 5)).toThrow(/positive integers/);
  });
});
