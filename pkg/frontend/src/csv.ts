/**
 * Parsers for the benchmark CSV schemas and the heatmap grid format.
 *
 * The producing side writes plain comma-separated values with a header row
 * and no quoting, and heatmap grids as a numeric matrix preceded by
 * '#'-prefixed axis lines. Schema violations throw SchemaError naming the
 * offending file/field so the CLI can exit nonzero with a usable message.
 */

export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}

export interface Table {
  header: string[];
  rows: string[][];
}

export function parseCsv(text: string, what: string): Table {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length < 2) {
    throw new SchemaError(`${what}: expected a header row and at least one data row`);
  }
  const header = lines[0].split(",");
  const rows = lines.slice(1).map((l) => l.split(","));
  for (const [i, row] of rows.entries()) {
    if (row.length !== header.length) {
      throw new SchemaError(
        `${what}: row ${i + 2} has ${row.length} fields, header has ${header.length}`,
      );
    }
  }
  return { header, rows };
}

export function columnIndex(table: Table, name: string, what: string): number {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new SchemaError(
      `${what}: missing required column '${name}' (have: ${table.header.join(", ")})`,
    );
  }
  return idx;
}

export function numericColumn(table: Table, name: string, what: string): number[] {
  const idx = columnIndex(table, name, what);
  return table.rows.map((row, i) => {
    const v = Number(row[idx]);
    if (!Number.isFinite(v)) {
      throw new SchemaError(`${what}: row ${i + 2}, column '${name}': not a number (${row[idx]})`);
    }
    return v;
  });
}

export interface HeatmapGrid {
  mode: string;
  xs: number[];
  ys: number[];
  values: number[][]; // values[j][i] at (xs[i], ys[j])
}

export function parseHeatmapGrid(text: string, what: string): HeatmapGrid {
  let mode = "";
  let xs: number[] | null = null;
  let ys: number[] | null = null;
  const values: number[][] = [];
  for (const line of text.split(/\r?\n/)) {
    if (line.startsWith("# mode:")) {
      mode = line.slice(7).trim();
    } else if (line.startsWith("# x:")) {
      xs = line.slice(4).trim().split(/\s+/).map(Number);
    } else if (line.startsWith("# y:")) {
      ys = line.slice(4).trim().split(/\s+/).map(Number);
    } else if (line.startsWith("#") || line.trim() === "") {
      continue;
    } else {
      values.push(line.split(",").map(Number));
    }
  }
  if (!xs || !ys) throw new SchemaError(`${what}: missing '# x:' / '# y:' axis lines`);
  if (values.length !== ys.length) {
    throw new SchemaError(`${what}: ${values.length} rows but ${ys.length} y entries`);
  }
  for (const [j, row] of values.entries()) {
    if (row.length !== xs.length) {
      throw new SchemaError(`${what}: row ${j} has ${row.length} cells, expected ${xs.length}`);
    }
    if (row.some((v) => !Number.isFinite(v))) {
      throw new SchemaError(`${what}: row ${j} contains non-numeric cells`);
    }
  }
  return { mode, xs, ys, values };
}
