/**
 * Log-log plot of greedy-tree total length vs point count with the fitted
 * slope read straight from the CSV (never recomputed here).
 */

import { SchemaError, Table, columnIndex, numericColumn } from "./csv.js";
import { document, num, tag, text } from "./svg.js";

export interface ScalingSeries {
  d: number;
  n: number[];
  total: number[];
  slope: number;
}

export function scalingSeries(table: Table, what: string): ScalingSeries[] {
  const dIdx = columnIndex(table, "d", what);
  const ns = numericColumn(table, "n", what);
  const totals = numericColumn(table, "mean_total_length", what);
  const slopes = numericColumn(table, "slope", what);
  const byD = new Map<number, ScalingSeries>();
  table.rows.forEach((row, i) => {
    const d = Number(row[dIdx]);
    if (!byD.has(d)) byD.set(d, { d, n: [], total: [], slope: slopes[i] });
    const s = byD.get(d)!;
    s.n.push(ns[i]);
    s.total.push(totals[i]);
    if (s.slope !== slopes[i]) {
      throw new SchemaError(`${what}: inconsistent slope column within d=${d}`);
    }
  });
  return [...byD.values()].sort((a, b) => a.d - b.d);
}

const W = 440;
const H = 320;
const M = { left: 64, right: 16, top: 28, bottom: 44 };
const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

export function renderScaling(series: ScalingSeries[]): string {
  if (series.length === 0) throw new SchemaError("scaling plot: no series");
  const allN = series.flatMap((s) => s.n.map(Math.log));
  const allT = series.flatMap((s) => s.total.map(Math.log));
  const nLo = Math.min(...allN);
  const nHi = Math.max(...allN);
  const tLo = Math.min(...allT);
  const tHi = Math.max(...allT);
  const xOf = (ln: number) => M.left + ((ln - nLo) / (nHi - nLo || 1)) * (W - M.left - M.right);
  const yOf = (lt: number) =>
    M.top + (1 - (lt - tLo) / (tHi - tLo || 1)) * (H - M.top - M.bottom);
  const body: string[] = [];
  body.push(text(W / 2, 16, "greedy-tree total length vs n (log-log)", "middle", 13));
  series.forEach((s, si) => {
    const color = COLORS[si % COLORS.length];
    // fitted line through the first point with the reported slope
    const lnN0 = Math.log(s.n[0]);
    const lnT0 = Math.log(s.total[0]);
    const lnN1 = Math.log(s.n[s.n.length - 1]);
    const lnT1 = lnT0 + s.slope * (lnN1 - lnN0);
    body.push(
      tag("line", {
        x1: xOf(lnN0),
        y1: yOf(lnT0),
        x2: xOf(lnN1),
        y2: yOf(lnT1),
        stroke: color,
        "stroke-width": 1,
        "stroke-dasharray": "4 3",
      }),
    );
    s.n.forEach((n, i) => {
      body.push(
        tag("circle", { cx: xOf(Math.log(n)), cy: yOf(Math.log(s.total[i])), r: 3.5, fill: color }),
      );
    });
    body.push(
      text(
        W - M.right - 4,
        M.top + 16 + 16 * si,
        `d=${s.d}: slope ${num(s.slope)}`,
        "end",
        11,
      ),
    );
  });
  body.push(text(W / 2, H - 10, "n (log scale)", "middle", 11));
  return document(W, H, body);
}
