import { describe, expect, it } from "vitest";

import { colormap, colormapNames } from "../src/color.js";

describe("colormaps", () => {
  it("hits the exact anchor colors at the ends", () => {
    const viridis = colormap("viridis");
    expect(viridis(0)).toEqual([68, 1, 84]);
    expect(viridis(1)).toEqual([253, 231, 37]);
    const gray = colormap("gray");
    expect(gray(0)).toEqual([0, 0, 0]);
    expect(gray(1)).toEqual([255, 255, 255]);
    expect(gray(0.5)).toEqual([128, 128, 128]);
  });

  it("clamps out-of-range values instead of extrapolating", () => {
    const viridis = colormap("viridis");
    expect(viridis(-3)).toEqual(viridis(0));
    expect(viridis(7)).toEqual(viridis(1));
    expect(viridis(NaN)).toEqual(viridis(0)); // NaN comparisons fall through to the low clamp
  });

  it("brightness grows with the value for the default map", () => {
    const viridis = colormap("viridis");
    let last = -1;
    for (let i = 0; i <= 20; i += 1) {
      const [r, g, b] = viridis(i / 20);
      const luma = 0.2126 * r + 0.7152 * g + 0.0722 * b;
      expect(luma).toBeGreaterThan(last);
      last = luma;
    }
  });

  it("stays inside byte range everywhere", () => {
    for (const name of colormapNames()) {
      const map = colormap(name);
      for (let i = 0; i <= 101; i += 1) {
        for (const channel of map(i / 101)) {
          expect(channel).toBeGreaterThanOrEqual(0);
          expect(channel).toBeLessThanOrEqual(255);
          expect(Number.isInteger(channel)).toBe(true);
        }
      }
    }
  });

  it("rejects unknown names with the list of known ones", () => {
    expect(() => colormap("plasma")).toThrow(/unknown colormap "plasma"/);
    expect(() => colormap("plasma")).toThrow(/viridis/);
  });
});
