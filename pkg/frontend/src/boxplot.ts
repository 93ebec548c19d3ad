/**
 * Paired boxplots of a planning-run metric, one box per nf mode.
 *
 * Boxes span the quartiles with whiskers at min/max; a green line marks the
 * median and a yellow marker the mean. Outlier clipping is opt-in and only
 * trims the drawn whisker range, never the printed summary statistics.
 */

import { SchemaError, Table, columnIndex, numericColumn } from "./csv.js";
import { document, num, tag, text, ticks } from "./svg.js";

export interface BoxStats {
  label: string;
  n: number;
  min: number;
  q1: number;
  median: number;
  q3: number;
  max: number;
  mean: number;
}

export function quantile(sorted: number[], q: number): number {
  if (sorted.length === 0) throw new SchemaError("quantile of empty data");
  const pos = (sorted.length - 1) * q;
  const lo = Math.floor(pos);
  const hi = Math.ceil(pos);
  if (lo === hi) return sorted[lo];
  return sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
}

export function groupStats(table: Table, metric: string, what: string): BoxStats[] {
  const modeIdx = columnIndex(table, "nf_mode", what);
  const values = numericColumn(table, metric, what);
  const groups = new Map<string, number[]>();
  table.rows.forEach((row, i) => {
    const key = row[modeIdx];
    if (!groups.has(key)) groups.set(key, []);
    groups.get(key)!.push(values[i]);
  });
  const out: BoxStats[] = [];
  for (const label of [...groups.keys()].sort()) {
    const data = groups.get(label)!.slice().sort((a, b) => a - b);
    out.push({
      label,
      n: data.length,
      min: data[0],
      q1: quantile(data, 0.25),
      median: quantile(data, 0.5),
      q3: quantile(data, 0.75),
      max: data[data.length - 1],
      mean: data.reduce((s, v) => s + v, 0) / data.length,
    });
  }
  return out;
}

const W = 420;
const H = 300;
const M = { left: 70, right: 16, top: 28, bottom: 36 };

export function renderBoxplot(stats: BoxStats[], metric: string, clipHi?: number): string {
  if (stats.length === 0) throw new SchemaError("boxplot: no groups to draw");
  const lo = 0;
  const hiData = Math.max(...stats.map((s) => s.max));
  const hi = clipHi !== undefined ? Math.min(clipHi, hiData) : hiData;
  const plotW = W - M.left - M.right;
  const plotH = H - M.top - M.bottom;
  const yOf = (v: number) => M.top + plotH - ((Math.min(v, hi) - lo) / (hi - lo || 1)) * plotH;
  const body: string[] = [];
  body.push(text(W / 2, 16, `${metric} by neighborhood finder`, "middle", 13));
  for (const t of ticks(lo, hi, 5)) {
    const y = yOf(t);
    body.push(
      tag("line", { x1: M.left - 4, y1: y, x2: W - M.right, y2: y, stroke: "#ddd", "stroke-width": 1 }),
    );
    body.push(text(M.left - 8, y + 4, num(t), "end", 10));
  }
  const slot = plotW / stats.length;
  const boxW = Math.min(60, slot * 0.5);
  stats.forEach((s, i) => {
    const cx = M.left + slot * (i + 0.5);
    const x0 = cx - boxW / 2;
    body.push(
      tag("line", { x1: cx, y1: yOf(s.min), x2: cx, y2: yOf(s.q1), stroke: "#444", "stroke-width": 1 }),
      tag("line", { x1: cx, y1: yOf(s.q3), x2: cx, y2: yOf(s.max), stroke: "#444", "stroke-width": 1 }),
      tag("rect", {
        x: x0,
        y: yOf(s.q3),
        width: boxW,
        height: Math.max(yOf(s.q1) - yOf(s.q3), 0.5),
        fill: "#9ecae1",
        stroke: "#444",
        "stroke-width": 1,
      }),
      tag("line", {
        x1: x0,
        y1: yOf(s.median),
        x2: x0 + boxW,
        y2: yOf(s.median),
        stroke: "green",
        "stroke-width": 2,
      }),
      tag("circle", { cx, cy: yOf(s.mean), r: 4, fill: "gold", stroke: "#444", "stroke-width": 0.5 }),
    );
    body.push(text(cx, H - M.bottom + 16, `${s.label} (n=${s.n})`, "middle", 11));
  });
  return document(W, H, body);
}
