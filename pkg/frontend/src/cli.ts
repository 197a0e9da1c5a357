#!/usr/bin/env node
import { parseArgs } from "node:util";

import { plotError } from "./plotError.js";
import { render } from "./render.js";

const USAGE = `usage:
  nlsviz render --frames 'DIR/frame_*.nlsf' [--trajectory CSV] [--out DIR]
                [--movie FILE.png] [--fps N] [--colormap NAME]
  nlsviz plot-error --summary sweep_summary.csv --out plot.png`;

export function main(argv: string[]): number {
  const command = argv[0];
  try {
    if (command === "render") {
      const { values } = parseArgs({
        args: argv.slice(1),
        options: {
          frames: { type: "string" },
          trajectory: { type: "string" },
          out: { type: "string" },
          movie: { type: "string" },
          fps: { type: "string" },
          colormap: { type: "string" },
        },
      });
      if (!values.frames) {
        throw new Error("render requires --frames");
      }
      const result = render({
        frames: values.frames,
        trajectory: values.trajectory,
        outDir: values.out,
        movie: values.movie,
        fps: values.fps === undefined ? undefined : Number(values.fps),
        colormap: values.colormap,
      });
      console.log(
        `render: ${result.frameCount} frames` +
          (result.images.length ? `, ${result.images.length} images` : "") +
          (result.movie ? `, movie ${result.movie}` : ""),
      );
      return 0;
    }
    if (command === "plot-error") {
      const { values } = parseArgs({
        args: argv.slice(1),
        options: { summary: { type: "string" }, out: { type: "string" } },
      });
      if (!values.summary || !values.out) {
        throw new Error("plot-error requires --summary and --out");
      }
      plotError(values.summary, values.out);
      console.log(`plot-error: wrote ${values.out}`);
      return 0;
    }
    console.error(USAGE);
    return 2;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

const invokedDirectly =
  typeof process.argv[1] === "string" && import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
