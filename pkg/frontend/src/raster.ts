import type { Rgb } from "./color.js";

// 5x7 bitmap glyphs for axis labels: 7 rows per glyph, 5 bits per row,
// most significant bit is the leftmost pixel. Covers numbers in fixed or
// exponent notation plus the few letters the plot annotations need.
const GLYPHS: Record<string, number[]> = {
  "0": [0x0e, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0e],
  "1": [0x04, 0x0c, 0x04, 0x04, 0x04, 0x04, 0x0e],
  "2": [0x0e, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1f],
  "3": [0x1f, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0e],
  "4": [0x02, 0x06, 0x0a, 0x12, 0x1f, 0x02, 0x02],
  "5": [0x1f, 0x10, 0x1e, 0x01, 0x01, 0x11, 0x0e],
  "6": [0x06, 0x08, 0x10, 0x1e, 0x11, 0x11, 0x0e],
  "7": [0x1f, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08],
  "8": [0x0e, 0x11, 0x11, 0x0e, 0x11, 0x11, 0x0e],
  "9": [0x0e, 0x11, 0x11, 0x0f, 0x01, 0x02, 0x0c],
  ".": [0x00, 0x00, 0x00, 0x00, 0x00, 0x0c, 0x0c],
  "-": [0x00, 0x00, 0x00, 0x1f, 0x00, 0x00, 0x00],
  "+": [0x00, 0x04, 0x04, 0x1f, 0x04, 0x04, 0x00],
  "=": [0x00, 0x00, 0x1f, 0x00, 0x1f, 0x00, 0x00],
  "/": [0x01, 0x01, 0x02, 0x04, 0x08, 0x10, 0x10],
  e: [0x00, 0x00, 0x0e, 0x11, 0x1f, 0x10, 0x0e],
  p: [0x00, 0x00, 0x1e, 0x11, 0x1e, 0x10, 0x10],
  s: [0x00, 0x00, 0x0f, 0x10, 0x0e, 0x01, 0x1e],
  t: [0x08, 0x08, 0x1c, 0x08, 0x08, 0x09, 0x06],
  x: [0x00, 0x00, 0x11, 0x0a, 0x04, 0x0a, 0x11],
  r: [0x00, 0x00, 0x16, 0x19, 0x10, 0x10, 0x10],
  o: [0x00, 0x00, 0x0e, 0x11, 0x11, 0x11, 0x0e],
  m: [0x00, 0x00, 0x1a, 0x15, 0x15, 0x15, 0x15],
  a: [0x00, 0x00, 0x0e, 0x01, 0x0f, 0x11, 0x0f],
  v: [0x00, 0x00, 0x11, 0x11, 0x11, 0x0a, 0x04],
  " ": [0, 0, 0, 0, 0, 0, 0],
};

export const GLYPH_WIDTH = 6; // 5 pixels + 1 of spacing
export const GLYPH_HEIGHT = 7;

/** A plain RGB image buffer with simple drawing primitives. */
export class Raster {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array;

  constructor(width: number, height: number, background: Rgb = [255, 255, 255]) {
    if (!Number.isInteger(width) || !Number.isInteger(height) || width < 1 || height < 1) {
      throw new Error(`raster size must be positive integers, got ${width}x${height}`);
    }
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(3 * width * height);
    for (let i = 0; i < width * height; i += 1) {
      this.data[3 * i] = background[0];
      this.data[3 * i + 1] = background[1];
      this.data[3 * i + 2] = background[2];
    }
  }

  set(x: number, y: number, rgb: Rgb): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = 3 * (y * this.width + x);
    this.data[i] = rgb[0];
    this.data[i + 1] = rgb[1];
    this.data[i + 2] = rgb[2];
  }

  get(x: number, y: number): Rgb {
    const i = 3 * (y * this.width + x);
    return [this.data[i], this.data[i + 1], this.data[i + 2]];
  }

  /** Alpha-blend a color onto one pixel; alpha in [0, 1]. */
  blend(x: number, y: number, rgb: Rgb, alpha: number): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const a = alpha <= 0 ? 0 : alpha >= 1 ? 1 : alpha;
    const i = 3 * (y * this.width + x);
    this.data[i] = Math.round(this.data[i] * (1 - a) + rgb[0] * a);
    this.data[i + 1] = Math.round(this.data[i + 1] * (1 - a) + rgb[1] * a);
    this.data[i + 2] = Math.round(this.data[i + 2] * (1 - a) + rgb[2] * a);
  }

  /** Bresenham line between integer endpoints. */
  line(x0: number, y0: number, x1: number, y1: number, rgb: Rgb): void {
    let x = Math.round(x0);
    let y = Math.round(y0);
    const xe = Math.round(x1);
    const ye = Math.round(y1);
    const dx = Math.abs(xe - x);
    const dy = -Math.abs(ye - y);
    const sx = x < xe ? 1 : -1;
    const sy = y < ye ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      this.set(x, y, rgb);
      if (x === xe && y === ye) break;
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

  rect(x0: number, y0: number, x1: number, y1: number, rgb: Rgb): void {
    this.line(x0, y0, x1, y0, rgb);
    this.line(x1, y0, x1, y1, rgb);
    this.line(x1, y1, x0, y1, rgb);
    this.line(x0, y1, x0, y0, rgb);
  }

  /** Filled square of side 2r+1 centered on (x, y), for plot markers. */
  marker(x: number, y: number, r: number, rgb: Rgb): void {
    for (let dy = -r; dy <= r; dy += 1) {
      for (let dx = -r; dx <= r; dx += 1) {
        this.set(x + dx, y + dy, rgb);
      }
    }
  }

  /**
   * Draw a label with the built-in 5x7 font at (x, y) = top-left corner.
   * Unknown characters render as blanks.
   */
  text(x: number, y: number, s: string, rgb: Rgb): void {
    let cx = x;
    for (const ch of s) {
      const glyph = GLYPHS[ch] ?? GLYPHS[" "];
      for (let row = 0; row < GLYPH_HEIGHT; row += 1) {
        const bits = glyph[row];
        for (let col = 0; col < 5; col += 1) {
          if (bits & (1 << (4 - col))) {
            this.set(cx + col, y + row, rgb);
          }
        }
      }
      cx += GLYPH_WIDTH;
    }
  }
}

/** Width in pixels of a string drawn by `Raster.text`. */
export function textWidth(s: string): number {
  return s.length * GLYPH_WIDTH;
}
