import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { CsvFormatError } from "../src/csv.js";
import { drawErrorPlot, layoutErrorPlot, plotError } from "../src/plotError.js";
import { decodePixels, parseChunks } from "./helpers.js";

const FIXTURES = join(fileURLToPath(new URL(".", import.meta.url)), "fixtures");
const SUMMARY = join(FIXTURES, "sweep", "sweep_summary.csv");

function tmp(): string {
  return mkdtempSync(join(tmpdir(), "nlsviz-"));
}

describe("error plot layout", () => {
  it("puts a perfectly first-order sweep exactly on the reference line", () => {
    const eps = [0.3, 0.1, 0.03, 0.01];
    const layout = layoutErrorPlot(eps, eps.slice()); // error = epsilon
    for (const [px, py] of layout.points) {
      expect(Math.abs(py - layout.referenceY(px))).toBeLessThanOrEqual(0.75);
    }
  });

  it("keeps any constant multiple of epsilon on the line too", () => {
    const eps = [0.25, 0.1, 0.04];
    const err = eps.map((e) => 28 * e);
    const layout = layoutErrorPlot(eps, err);
    for (const [px, py] of layout.points) {
      expect(Math.abs(py - layout.referenceY(px))).toBeLessThanOrEqual(0.75);
    }
  });

  it("shows second-order data leaving the line", () => {
    const eps = [0.3, 0.1, 0.03];
    const err = eps.map((e) => e * e);
    const layout = layoutErrorPlot(eps, err);
    const [, py0] = layout.points[0];
    expect(Math.abs(py0 - layout.referenceY(layout.points[0][0]))).toBeLessThanOrEqual(0.75);
    const [pxLast, pyLast] = layout.points[2];
    expect(Math.abs(pyLast - layout.referenceY(pxLast))).toBeGreaterThan(5);
  });

  it("handles a single point by padding the ranges", () => {
    const layout = layoutErrorPlot([0.1], [0.5]);
    const [px, py] = layout.points[0];
    expect(px).toBeGreaterThan(layout.left);
    expect(px).toBeLessThan(layout.width - layout.right);
    expect(py).toBeGreaterThan(layout.top);
    expect(py).toBeLessThan(layout.height - layout.bottom);
    expect(Math.abs(py - layout.referenceY(px))).toBeLessThanOrEqual(0.75);
  });

  it("rejects empty or mismatched input", () => {
    expect(() => layoutErrorPlot([], [])).toThrow(/non-empty/);
    expect(() => layoutErrorPlot([0.1], [])).toThrow(/matching/);
  });
});

describe("plotError", () => {
  it("renders the sweep fixture to a PNG", () => {
    const out = join(tmp(), "sweep.png");
    const layout = plotError(SUMMARY, out);
    expect(existsSync(out)).toBe(true);
    expect(layout.points.length).toBe(2);
    const png = readFileSync(out);
    const chunks = parseChunks(png);
    expect(chunks.map((c) => c.type)).toEqual(["IHDR", "IDAT", "IEND"]);
    const { width, height } = decodePixels(png);
    expect(width).toBe(layout.width);
    expect(height).toBe(layout.height);
  });

  it("draws markers at the laid-out point positions", () => {
    const eps = [0.25, 0.1];
    const err = [0.5, 0.2];
    const { raster, layout } = drawErrorPlot(eps, err);
    for (const [px, py] of layout.points) {
      const [r, g, b] = raster.get(Math.round(px), Math.round(py));
      expect([r, g, b]).toEqual([40, 60, 150]);
    }
  });

  it("accepts a single-row summary", () => {
    const dir = tmp();
    const csv = join(dir, "one.csv");
    writeFileSync(csv, "epsilon,max_h_eps_error,max_error_over_eps\n0.1,0.5,5\n");
    const layout = plotError(csv, join(dir, "one.png"));
    expect(layout.points.length).toBe(1);
    expect(existsSync(join(dir, "one.png"))).toBe(true);
  });

  it("rejects malformed summaries", () => {
    const dir = tmp();
    const ragged = join(dir, "ragged.csv");
    writeFileSync(ragged, "epsilon,max_h_eps_error\n0.1\n");
    expect(() => plotError(ragged, join(dir, "x.png"))).toThrow(CsvFormatError);

    const wrongCols = join(dir, "cols.csv");
    writeFileSync(wrongCols, "eps,err\n0.1,0.5\n");
    expect(() => plotError(wrongCols, join(dir, "x.png"))).toThrow(/missing column "epsilon"/);

    const negative = join(dir, "neg.csv");
    writeFileSync(negative, "epsilon,max_h_eps_error,max_error_over_eps\n0.1,-0.5,1\n");
    expect(() => plotError(negative, join(dir, "x.png"))).toThrow(/must be positive/);

    const empty = join(dir, "empty.csv");
    writeFileSync(empty, "epsilon,max_h_eps_error,max_error_over_eps\n");
    expect(() => plotError(empty, join(dir, "x.png"))).toThrow(/no data rows/);
  });
});
