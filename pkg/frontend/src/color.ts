/** RGB triple, each channel 0..255. */
export type Rgb = [number, number, number];

/** Maps a value in [0, 1] to a color; out-of-range inputs are clamped. */
export type Colormap = (v: number) => Rgb;

// anchor colors sampled uniformly on [0, 1], linearly interpolated between
const STOPS: Record<string, Rgb[]> = {
  viridis: [
    [68, 1, 84],
    [71, 44, 122],
    [59, 81, 139],
    [44, 113, 142],
    [33, 144, 141],
    [39, 173, 129],
    [92, 200, 99],
    [170, 220, 50],
    [253, 231, 37],
  ],
  magma: [
    [0, 0, 4],
    [40, 11, 84],
    [81, 18, 124],
    [129, 37, 129],
    [183, 55, 121],
    [229, 80, 100],
    [252, 137, 97],
    [254, 194, 135],
    [252, 253, 191],
  ],
  gray: [
    [0, 0, 0],
    [255, 255, 255],
  ],
};

export function colormapNames(): string[] {
  return Object.keys(STOPS);
}

/** Look up a colormap by name; throws on unknown names. */
export function colormap(name: string): Colormap {
  const stops = STOPS[name];
  if (!stops) {
    throw new Error(`unknown colormap "${name}" (have: ${colormapNames().join(", ")})`);
  }
  const segments = stops.length - 1;
  return (v: number): Rgb => {
    const clamped = v >= 1 ? 1 : v > 0 ? v : 0; // NaN falls to the low end
    const scaled = clamped * segments;
    const lo = Math.min(Math.floor(scaled), segments - 1);
    const w = scaled - lo;
    const a = stops[lo];
    const b = stops[lo + 1];
    return [
      Math.round(a[0] + w * (b[0] - a[0])),
      Math.round(a[1] + w * (b[1] - a[1])),
      Math.round(a[2] + w * (b[2] - a[2])),
    ];
  };
}
