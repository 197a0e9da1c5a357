export { FrameFormatError, decodeFrame, encodeFrame, modulusSquared, readFrame, sameGrid } from "./frame.js";
export type { Frame } from "./frame.js";
export {
  CsvFormatError,
  column,
  parseNumericCsv,
  readNumericCsv,
  readSweepSummary,
  readTrajectory,
} from "./csv.js";
export type { NumericTable, SweepSummary, Trajectory } from "./csv.js";
export { colormap, colormapNames } from "./color.js";
export type { Colormap, Rgb } from "./color.js";
export { Raster, textWidth } from "./raster.js";
export { crc32, encodePng, PNG_SIGNATURE } from "./png.js";
export { encodeApng } from "./apng.js";
export { expandFrames, formatNumber, heatLayout, render, renderFrame } from "./render.js";
export type { HeatLayout, RenderResult, RenderSpec } from "./render.js";
export { drawErrorPlot, layoutErrorPlot, plotError } from "./plotError.js";
export type { ErrorPlotLayout } from "./plotError.js";
