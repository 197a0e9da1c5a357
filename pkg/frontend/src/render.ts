import { existsSync, mkdirSync, readdirSync, writeFileSync } from "node:fs";
import { basename, dirname, join } from "node:path";

import { encodeApng } from "./apng.js";
import { colormap, type Colormap, type Rgb } from "./color.js";
import { readTrajectory, type Trajectory } from "./csv.js";
import { modulusSquared, readFrame, sameGrid, type Frame } from "./frame.js";
import { encodePng } from "./png.js";
import { Raster, textWidth } from "./raster.js";

/** What to draw and where to put it. */
export interface RenderSpec {
  /** Frame files: a literal path or a pattern with * / ? in the name. */
  frames: string;
  /** Optional classical-path CSV drawn beneath the field as an overlay. */
  trajectory?: string;
  /** Colormap name; defaults to "viridis". */
  colormap?: string;
  /** Directory that receives one PNG per frame. */
  outDir?: string;
  /** Path for an animated PNG assembled from all frames. */
  movie?: string;
  /** Movie playback rate; must be at least 1. Defaults to 10. */
  fps?: number;
}

export interface RenderResult {
  images: string[];
  movie?: string;
  frameCount: number;
}

const PATH_COLOR: Rgb = [255, 255, 255];
const FRAME_COLOR: Rgb = [80, 80, 80];
const TEXT_COLOR: Rgb = [20, 20, 20];

/** Pixel geometry of a rendered frame, exposed for tests and callers. */
export interface HeatLayout {
  /** Square pixels per grid sample. */
  scale: number;
  left: number;
  top: number;
  plotWidth: number;
  plotHeight: number;
  imgWidth: number;
  imgHeight: number;
  /** Physical extents (grid coordinates stretched by sqrt(epsilon)). */
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
  /** Map a physical point to the pixel at its grid cell's center. */
  toPixel(x: number, y: number): [number, number];
}

/**
 * Compute where a frame's samples land on the canvas.
 *
 * Axis 1 runs rightwards and axis 2 upwards, both in the physical
 * coordinates x = sqrt(epsilon) * X, so images line up with classical
 * trajectories rather than with the stretched computational box.
 */
export function heatLayout(frame: Frame): HeatLayout {
  if (frame.dims !== 2) {
    throw new Error(`render supports two-dimensional frames, got dims=${frame.dims}`);
  }
  const [n1, n2] = frame.points;
  const root = Math.sqrt(frame.epsilon);
  const [l1, l2] = frame.halfWidths;
  const scale = Math.max(1, Math.floor(360 / Math.max(n1, n2)));
  const left = 46;
  const top = 20;
  const bottom = 18;
  const right = 10;
  const plotWidth = scale * n1;
  const plotHeight = scale * n2;
  const h1 = (2 * l1) / n1;
  const h2 = (2 * l2) / n2;
  return {
    scale,
    left,
    top,
    plotWidth,
    plotHeight,
    imgWidth: left + plotWidth + right,
    imgHeight: top + plotHeight + bottom,
    xMin: -root * l1,
    xMax: root * l1,
    yMin: -root * l2,
    yMax: root * l2,
    toPixel(x: number, y: number): [number, number] {
      const i1 = clampIndex(Math.round((x / root + l1) / h1), n1);
      const i2 = clampIndex(Math.round((y / root + l2) / h2), n2);
      const px = left + scale * i1 + (scale >> 1);
      const py = top + scale * (n2 - 1 - i2) + (scale >> 1);
      return [px, py];
    },
  };
}

function clampIndex(i: number, n: number): number {
  return i < 0 ? 0 : i >= n ? n - 1 : i;
}

/**
 * Draw one frame: |field|^2 heatmap, axis box with physical tick labels,
 * a time stamp, and (optionally) the full classical path underneath.
 *
 * `maxValue` fixes the color scale so a movie does not flicker as the
 * bump breathes; pass the maximum of |field|^2 over the whole run.
 */
export function renderFrame(
  frame: Frame,
  maxValue: number,
  cmap: Colormap,
  trajectory?: Trajectory,
): Raster {
  const layout = heatLayout(frame);
  const [n1, n2] = frame.points;
  const raster = new Raster(layout.imgWidth, layout.imgHeight);
  const msq = modulusSquared(frame);
  const norm = maxValue > 0 ? 1 / maxValue : 0;

  // per-pixel normalized intensity inside the plot area, kept so the
  // overlay can fade where the field is bright (the path sits beneath)
  const intensity = new Float64Array(layout.plotWidth * layout.plotHeight);
  for (let i1 = 0; i1 < n1; i1 += 1) {
    for (let i2 = 0; i2 < n2; i2 += 1) {
      const v = msq[i1 * n2 + i2] * norm;
      const rgb = cmap(v);
      const px0 = layout.scale * i1;
      const py0 = layout.scale * (n2 - 1 - i2);
      for (let dy = 0; dy < layout.scale; dy += 1) {
        for (let dx = 0; dx < layout.scale; dx += 1) {
          const px = px0 + dx;
          const py = py0 + dy;
          raster.set(layout.left + px, layout.top + py, rgb);
          intensity[py * layout.plotWidth + px] = v;
        }
      }
    }
  }

  if (trajectory && trajectory.positions.length > 0) {
    drawPathBeneath(raster, layout, intensity, trajectory);
  }

  raster.rect(
    layout.left - 1,
    layout.top - 1,
    layout.left + layout.plotWidth,
    layout.top + layout.plotHeight,
    FRAME_COLOR,
  );
  annotate(raster, layout, frame.t);
  return raster;
}

function drawPathBeneath(
  raster: Raster,
  layout: HeatLayout,
  intensity: Float64Array,
  trajectory: Trajectory,
): void {
  const points = trajectory.positions.map((pos) => layout.toPixel(pos[0], pos[1]));
  for (let i = 1; i < points.length; i += 1) {
    blendSegment(raster, layout, intensity, points[i - 1], points[i]);
  }
}

function blendSegment(
  raster: Raster,
  layout: HeatLayout,
  intensity: Float64Array,
  a: [number, number],
  b: [number, number],
): void {
  // Bresenham walk with per-pixel alpha from the local field strength
  let x = a[0];
  let y = a[1];
  const dx = Math.abs(b[0] - x);
  const dy = -Math.abs(b[1] - y);
  const sx = x < b[0] ? 1 : -1;
  const sy = y < b[1] ? 1 : -1;
  let err = dx + dy;
  for (;;) {
    const px = x - layout.left;
    const py = y - layout.top;
    if (px >= 0 && py >= 0 && px < layout.plotWidth && py < layout.plotHeight) {
      const v = intensity[py * layout.plotWidth + px];
      raster.blend(x, y, PATH_COLOR, 0.85 * (1 - v));
    }
    if (x === b[0] && y === b[1]) break;
    const e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
  }
}

function annotate(raster: Raster, layout: HeatLayout, t: number): void {
  raster.text(layout.left, layout.top - 12, `t = ${formatNumber(t)}`, TEXT_COLOR);
  const xMin = formatNumber(layout.xMin);
  const xMax = formatNumber(layout.xMax);
  const yBase = layout.top + layout.plotHeight + 4;
  raster.text(layout.left, yBase, xMin, TEXT_COLOR);
  raster.text(layout.left + layout.plotWidth - textWidth(xMax), yBase, xMax, TEXT_COLOR);
  const yMin = formatNumber(layout.yMin);
  const yMax = formatNumber(layout.yMax);
  raster.text(layout.left - 4 - textWidth(yMax), layout.top - 3, yMax, TEXT_COLOR);
  raster.text(layout.left - 4 - textWidth(yMin), layout.top + layout.plotHeight - 4, yMin, TEXT_COLOR);
}

/** Compact number formatting that stays inside the bitmap font. */
export function formatNumber(v: number): string {
  if (v === 0) return "0";
  if (!Number.isFinite(v)) return v > 0 ? "+inf" : "-inf";
  const fixed = Math.abs(v) >= 0.01 && Math.abs(v) < 1000;
  const s = fixed ? v.toPrecision(4) : v.toExponential(2);
  return s
    .replace(/(\.\d*?)0+(?=$|e)/, "$1")
    .replace(/\.(?=$|e)/, "")
    .replace(/e\+?(-?)0*(\d)/, "e$1$2");
}

/** List the frame files a pattern refers to, in name order. */
export function expandFrames(pattern: string): string[] {
  const name = basename(pattern);
  if (!/[*?]/.test(name)) {
    if (!existsSync(pattern)) {
      throw new Error(`no frames match "${pattern}"`);
    }
    return [pattern];
  }
  const dir = dirname(pattern);
  const regex = new RegExp(
    `^${name.replace(/[.+^${}()|[\]\\]/g, "\\$&").replace(/\*/g, ".*").replace(/\?/g, ".")}$`,
  );
  let entries: string[];
  try {
    entries = readdirSync(dir);
  } catch {
    throw new Error(`no frames match "${pattern}"`);
  }
  const matches = entries.filter((entry) => regex.test(entry)).sort();
  if (matches.length === 0) {
    throw new Error(`no frames match "${pattern}"`);
  }
  return matches.map((entry) => join(dir, entry));
}

/**
 * Render a run: one PNG per frame and/or an animated PNG.
 *
 * All frames must share a single grid; the color scale is normalized
 * by the brightest sample across the whole run. When a trajectory CSV
 * is given, the complete classical path is drawn beneath the field in
 * every frame, so the bump can be watched tracing the curve.
 */
export function render(spec: RenderSpec): RenderResult {
  if (!spec.outDir && !spec.movie) {
    throw new Error("render needs an output directory or a movie path");
  }
  const fps = spec.fps ?? 10;
  if (!(fps >= 1)) {
    throw new Error(`fps must be at least 1, got ${fps}`);
  }
  const cmap = colormap(spec.colormap ?? "viridis");
  const paths = expandFrames(spec.frames);
  const frames: Frame[] = paths.map((path) => readFrame(path));
  for (let i = 1; i < frames.length; i += 1) {
    if (!sameGrid(frames[0], frames[i])) {
      throw new Error(`frames use mixed grids: "${paths[i]}" differs from "${paths[0]}"`);
    }
  }
  const trajectory = spec.trajectory ? readTrajectory(spec.trajectory) : undefined;

  let maxValue = 0;
  for (const frame of frames) {
    const msq = modulusSquared(frame);
    for (let i = 0; i < msq.length; i += 1) {
      if (msq[i] > maxValue) maxValue = msq[i];
    }
  }

  const images: string[] = [];
  const rasters: Raster[] = [];
  for (let i = 0; i < frames.length; i += 1) {
    const raster = renderFrame(frames[i], maxValue, cmap, trajectory);
    rasters.push(raster);
    if (spec.outDir) {
      mkdirSync(spec.outDir, { recursive: true });
      const out = join(spec.outDir, basename(paths[i]).replace(/\.[^.]*$/, "") + ".png");
      writeFileSync(out, encodePng(raster.width, raster.height, raster.data));
      images.push(out);
    }
  }

  let movie: string | undefined;
  if (spec.movie) {
    const first = rasters[0];
    const buffers = rasters.map((r) => r.data);
    mkdirSync(dirname(spec.movie), { recursive: true });
    writeFileSync(spec.movie, encodeApng(buffers, first.width, first.height, fps));
    movie = spec.movie;
  }
  return { images, movie, frameCount: frames.length };
}
