/**
 * Distance-field heatmap pair: vertices panel and swath panel.
 *
 * Both panels share one color scale so they are visually comparable, and
 * the pair is validated before rendering: the swath distances can never
 * exceed the vertex distances anywhere (the swath contains the vertices),
 * so a violating input is a producer bug and rendering refuses.
 */

import { HeatmapGrid, SchemaError } from "./csv.js";
import { viridis } from "./colormap.js";
import { document, num, tag, text } from "./svg.js";

export interface PairCheck {
  ok: boolean;
  worstViolation: number;
  cells: number;
}

/** Pointwise swath <= vertices check, run on the matrices before rendering. */
export function checkSwathDominated(
  vertices: HeatmapGrid,
  swath: HeatmapGrid,
  tol = 1e-9,
): PairCheck {
  if (
    vertices.xs.length !== swath.xs.length ||
    vertices.ys.length !== swath.ys.length
  ) {
    throw new SchemaError(
      `heatmap pair: grid shapes differ (${vertices.xs.length}x${vertices.ys.length} vs ${swath.xs.length}x${swath.ys.length})`,
    );
  }
  let worst = 0;
  let cells = 0;
  for (let j = 0; j < vertices.ys.length; j++) {
    for (let i = 0; i < vertices.xs.length; i++) {
      const gap = swath.values[j][i] - vertices.values[j][i];
      if (gap > worst) worst = gap;
      cells++;
    }
  }
  return { ok: worst <= tol, worstViolation: worst, cells };
}

export function gridMax(grids: HeatmapGrid[]): number {
  let hi = 0;
  for (const g of grids) {
    for (const row of g.values) for (const v of row) if (v > hi) hi = v;
  }
  return hi > 0 ? hi : 1;
}

const CELL = 6;
const MARGIN = 40;
const BAR_W = 14;

export function renderHeatmap(grid: HeatmapGrid, scaleMax: number, title: string): string {
  const nx = grid.xs.length;
  const ny = grid.ys.length;
  const w = MARGIN * 2 + nx * CELL + BAR_W + 36;
  const h = MARGIN * 2 + ny * CELL;
  const body: string[] = [];
  body.push(text(MARGIN + (nx * CELL) / 2, MARGIN - 12, title, "middle", 13));
  for (let j = 0; j < ny; j++) {
    for (let i = 0; i < nx; i++) {
      // y axis points up: row 0 (smallest y) sits at the bottom
      body.push(
        tag("rect", {
          x: MARGIN + i * CELL,
          y: MARGIN + (ny - 1 - j) * CELL,
          width: CELL,
          height: CELL,
          fill: viridis(grid.values[j][i] / scaleMax),
        }),
      );
    }
  }
  // shared color bar
  const bx = MARGIN + nx * CELL + 10;
  const steps = 32;
  const bh = ny * CELL;
  for (let s = 0; s < steps; s++) {
    body.push(
      tag("rect", {
        x: bx,
        y: MARGIN + bh - ((s + 1) * bh) / steps,
        width: BAR_W,
        height: bh / steps + 0.5,
        fill: viridis((s + 0.5) / steps),
      }),
    );
  }
  body.push(text(bx + BAR_W + 4, MARGIN + 10, num(scaleMax), "start", 10));
  body.push(text(bx + BAR_W + 4, MARGIN + bh, "0", "start", 10));
  return document(w, h, body);
}

export interface HeatmapPairResult {
  verticesSvg: string;
  swathSvg: string;
  check: PairCheck;
  scaleMax: number;
}

export function renderHeatmapPair(
  vertices: HeatmapGrid,
  swath: HeatmapGrid,
): HeatmapPairResult {
  const check = checkSwathDominated(vertices, swath);
  if (!check.ok) {
    throw new SchemaError(
      `heatmap pair: swath grid exceeds vertices grid by ${check.worstViolation} somewhere`,
    );
  }
  const scaleMax = gridMax([vertices, swath]);
  return {
    verticesSvg: renderHeatmap(vertices, scaleMax, "distance to nearest vertex"),
    swathSvg: renderHeatmap(swath, scaleMax, "distance to nearest edge"),
    check,
    scaleMax,
  };
}
