/**
 * Figure pipeline commands. Strictly presentational: inputs are the
 * benchmark CSV schemas, outputs are SVG files, nothing is recomputed.
 *
 *   render-heatmap --vertices grid.csv --swath grid.csv --out dir/
 *   render-boxplot --input planning.csv [--metric cd_calls] --out fig.svg
 *   render-scaling --input scaling.csv --out fig.svg
 */

import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { parseArgs } from "node:util";

import { parseCsv, parseHeatmapGrid, SchemaError } from "./csv.js";
import { renderHeatmapPair } from "./heatmap.js";
import { groupStats, renderBoxplot } from "./boxplot.js";
import { renderScaling, scalingSeries } from "./scaling.js";

function renderHeatmapCmd(argv: string[]): void {
  const { values } = parseArgs({
    args: argv,
    options: {
      vertices: { type: "string" },
      swath: { type: "string" },
      out: { type: "string" },
    },
  });
  if (!values.vertices || !values.swath || !values.out) {
    throw new SchemaError("render-heatmap needs --vertices, --swath, and --out");
  }
  const vgrid = parseHeatmapGrid(readFileSync(values.vertices, "utf8"), values.vertices);
  const sgrid = parseHeatmapGrid(readFileSync(values.swath, "utf8"), values.swath);
  const result = renderHeatmapPair(vgrid, sgrid);
  mkdirSync(values.out, { recursive: true });
  const vpath = join(values.out, "heatmap_vertices.svg");
  const spath = join(values.out, "heatmap_swath.svg");
  writeFileSync(vpath, result.verticesSvg);
  writeFileSync(spath, result.swathSvg);
  console.log(
    `render-heatmap: checked swath <= vertices on ${result.check.cells} cells ` +
      `(worst gap ${result.check.worstViolation}); wrote ${vpath}, ${spath}`,
  );
}

function renderBoxplotCmd(argv: string[]): void {
  const { values } = parseArgs({
    args: argv,
    options: {
      input: { type: "string" },
      metric: { type: "string", default: "cd_calls" },
      out: { type: "string" },
      "clip-hi": { type: "string" },
    },
  });
  if (!values.input || !values.out) {
    throw new SchemaError("render-boxplot needs --input and --out");
  }
  const table = parseCsv(readFileSync(values.input, "utf8"), values.input);
  const stats = groupStats(table, values.metric!, values.input);
  const clip = values["clip-hi"] !== undefined ? Number(values["clip-hi"]) : undefined;
  writeFileSync(values.out, renderBoxplot(stats, values.metric!, clip));
  for (const s of stats) {
    console.log(
      `render-boxplot: ${s.label}: n=${s.n} median=${s.median} mean=${s.mean.toFixed(2)}`,
    );
  }
  console.log(`render-boxplot: wrote ${values.out}`);
}

function renderScalingCmd(argv: string[]): void {
  const { values } = parseArgs({
    args: argv,
    options: { input: { type: "string" }, out: { type: "string" } },
  });
  if (!values.input || !values.out) {
    throw new SchemaError("render-scaling needs --input and --out");
  }
  const table = parseCsv(readFileSync(values.input, "utf8"), values.input);
  const series = scalingSeries(table, values.input);
  writeFileSync(values.out, renderScaling(series));
  console.log(
    `render-scaling: wrote ${values.out} (${series.map((s) => `d=${s.d}`).join(", ")})`,
  );
}

export function main(argv: string[]): number {
  const [command, ...rest] = argv;
  try {
    switch (command) {
      case "render-heatmap":
        renderHeatmapCmd(rest);
        return 0;
      case "render-boxplot":
        renderBoxplotCmd(rest);
        return 0;
      case "render-scaling":
        renderScalingCmd(rest);
        return 0;
      default:
        console.error(
          "usage: cli.js {render-heatmap|render-boxplot|render-scaling} [options]",
        );
        return 1;
    }
  } catch (err) {
    if (err instanceof SchemaError || err instanceof Error) {
      console.error(`${err.name}: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split("/").pop()!);
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
