/** Minimal deterministic SVG assembly: fixed styles, no timestamps. */

export function num(v: number): string {
  // stable short form: up to 4 decimals, no trailing zeros
  const s = v.toFixed(4);
  return s.replace(/\.?0+$/, "") || "0";
}

export function tag(
  name: string,
  attrs: Record<string, string | number>,
  children: string[] = [],
): string {
  const a = Object.entries(attrs)
    .map(([k, v]) => `${k}="${typeof v === "number" ? num(v) : v}"`)
    .join(" ");
  if (children.length === 0) return `<${name} ${a}/>`;
  return `<${name} ${a}>${children.join("")}</${name}>`;
}

export function text(x: number, y: number, s: string, anchor = "middle", size = 11): string {
  return tag(
    "text",
    { x, y, "text-anchor": anchor, "font-size": size, "font-family": "sans-serif" },
    [escapeText(s)],
  );
}

export function escapeText(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function document(width: number, height: number, body: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    ...body,
    "</svg>",
    "",
  ].join("\n");
}

/** Round axis ticks: a handful of evenly spaced values over [lo, hi]. */
export function ticks(lo: number, hi: number, n = 5): number[] {
  if (hi <= lo) return [lo];
  const out = [];
  for (let i = 0; i <= n; i++) out.push(lo + ((hi - lo) * i) / n);
  return out;
}
