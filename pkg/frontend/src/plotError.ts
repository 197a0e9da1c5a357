import { mkdirSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";

import { readSweepSummary } from "./csv.js";
import { encodePng } from "./png.js";
import { Raster, textWidth } from "./raster.js";
import { formatNumber } from "./render.js";

const POINT_COLOR = [40, 60, 150] as [number, number, number];
const LINE_COLOR = [170, 60, 40] as [number, number, number];
const FRAME_COLOR = [80, 80, 80] as [number, number, number];
const TEXT_COLOR = [20, 20, 20] as [number, number, number];

/** Pixel placement of the sweep plot, exposed for tests. */
export interface ErrorPlotLayout {
  width: number;
  height: number;
  left: number;
  right: number;
  top: number;
  bottom: number;
  /** log10 ranges after padding. */
  logEpsRange: [number, number];
  logErrRange: [number, number];
  /** Data points in pixel coordinates, same order as the input. */
  points: Array<[number, number]>;
  /** y pixel of the slope-1 reference at a given x pixel. */
  referenceY(xPixel: number): number;
  toPixel(eps: number, err: number): [number, number];
}

/**
 * Place sweep points and the slope-1 reference on a log-log canvas.
 *
 * The reference line passes through the first data point with slope
 * one in log-log coordinates, i.e. error proportional to epsilon; a
 * sweep whose error really is O(epsilon) hugs the line.
 */
export function layoutErrorPlot(
  epsilon: number[],
  maxError: number[],
  width = 480,
  height = 360,
): ErrorPlotLayout {
  if (epsilon.length === 0 || epsilon.length !== maxError.length) {
    throw new Error("layoutErrorPlot needs matching non-empty epsilon and error arrays");
  }
  const logEps = epsilon.map(Math.log10);
  const logErr = maxError.map(Math.log10);
  const logEpsRange = padRange(Math.min(...logEps), Math.max(...logEps));
  const logErrRange = padRange(Math.min(...logErr), Math.max(...logErr));
  const left = 64;
  const right = 16;
  const top = 20;
  const bottom = 26;
  const plotW = width - left - right;
  const plotH = height - top - bottom;
  const xOf = (le: number): number =>
    left + ((le - logEpsRange[0]) / (logEpsRange[1] - logEpsRange[0])) * plotW;
  const yOf = (lv: number): number =>
    top + plotH - ((lv - logErrRange[0]) / (logErrRange[1] - logErrRange[0])) * plotH;
  const offset = logErr[0] - logEps[0];
  return {
    width,
    height,
    left,
    right,
    top,
    bottom,
    logEpsRange,
    logErrRange,
    points: logEps.map((le, i) => [xOf(le), yOf(logErr[i])]),
    referenceY(xPixel: number): number {
      const le = logEpsRange[0] + ((xPixel - left) / plotW) * (logEpsRange[1] - logEpsRange[0]);
      return yOf(le + offset);
    },
    toPixel(eps: number, err: number): [number, number] {
      return [xOf(Math.log10(eps)), yOf(Math.log10(err))];
    },
  };
}

function padRange(lo: number, hi: number): [number, number] {
  if (hi - lo < 1e-12) {
    return [lo - 0.5, hi + 0.5];
  }
  const pad = 0.12 * (hi - lo);
  return [lo - pad, hi + pad];
}

/** Draw the log-log sweep plot onto a fresh raster. */
export function drawErrorPlot(epsilon: number[], maxError: number[]): {
  raster: Raster;
  layout: ErrorPlotLayout;
} {
  const layout = layoutErrorPlot(epsilon, maxError);
  const raster = new Raster(layout.width, layout.height);
  const x0 = layout.left;
  const x1 = layout.width - layout.right;
  const y0 = layout.top;
  const y1 = layout.height - layout.bottom;
  raster.rect(x0 - 1, y0 - 1, x1, y1, FRAME_COLOR);

  // slope-1 reference beneath the markers, dashed
  for (let x = x0; x < x1; x += 1) {
    if (((x - x0) & 7) < 5) {
      const y = Math.round(layout.referenceY(x));
      if (y >= y0 && y < y1) {
        raster.set(x, y, LINE_COLOR);
      }
    }
  }
  for (const [px, py] of layout.points) {
    raster.marker(Math.round(px), Math.round(py), 2, POINT_COLOR);
  }

  raster.text(x0, y0 - 12, "max error vs eps", TEXT_COLOR);
  const loEps = formatNumber(Math.pow(10, layout.logEpsRange[0]));
  const hiEps = formatNumber(Math.pow(10, layout.logEpsRange[1]));
  raster.text(x0, y1 + 6, loEps, TEXT_COLOR);
  raster.text(x1 - textWidth(hiEps), y1 + 6, hiEps, TEXT_COLOR);
  const loErr = formatNumber(Math.pow(10, layout.logErrRange[0]));
  const hiErr = formatNumber(Math.pow(10, layout.logErrRange[1]));
  raster.text(x0 - 6 - textWidth(hiErr), y0 - 3, hiErr, TEXT_COLOR);
  raster.text(x0 - 6 - textWidth(loErr), y1 - 4, loErr, TEXT_COLOR);
  return { raster, layout };
}

/**
 * Read a sweep summary CSV and write the log-log plot as a PNG.
 * A single-row summary is valid and plots one marker on the line.
 */
export function plotError(csvPath: string, outPath: string): ErrorPlotLayout {
  const summary = readSweepSummary(csvPath);
  const { raster, layout } = drawErrorPlot(summary.epsilon, summary.maxError);
  mkdirSync(dirname(outPath), { recursive: true });
  writeFileSync(outPath, encodePng(raster.width, raster.height, raster.data));
  return layout;
}
