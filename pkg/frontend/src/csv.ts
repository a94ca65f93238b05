import { SpecError } from "./types.js";

export interface CsvTable {
  header: string[];
  rows: string[][];
}

/** Parse simple comma-separated data; lines starting with '#' are comments. */
export function parseCsv(text: string): CsvTable {
  const lines = text
    .split(/\r?\n/)
    .filter((line) => line.length > 0 && !line.startsWith("#"));
  if (lines.length === 0) {
    throw new SpecError("empty CSV input");
  }
  const header = lines[0].split(",").map((s) => s.trim());
  const rows = lines.slice(1).map((line) => line.split(",").map((s) => s.trim()));
  for (const row of rows) {
    if (row.length !== header.length) {
      throw new SpecError(
        `CSV row has ${row.length} fields, header has ${header.length}`
      );
    }
  }
  return { header, rows };
}

export function requireColumns(table: CsvTable, columns: string[], what: string): Map<string, number> {
  const index = new Map<string, number>();
  table.header.forEach((name, i) => index.set(name, i));
  for (const col of columns) {
    if (!index.has(col)) {
      throw new SpecError(`${what}: missing column '${col}' (header: ${table.header.join(",")})`);
    }
  }
  return index;
}

export function toNumber(value: string, column: string): number {
  if (value === "inf") return Infinity;
  if (value === "-inf") return -Infinity;
  const parsed = Number(value);
  if (value === "" || Number.isNaN(parsed)) {
    throw new SpecError(`column '${column}': cannot parse number from '${value}'`);
  }
  return parsed;
}

export interface SweepCell {
  alpha: number;
  beta: number;
  gap: number;
}

/** Hyperparameter sweep output: alpha,beta,gap rows. */
export function readSweep(text: string): SweepCell[] {
  const table = parseCsv(text);
  const idx = requireColumns(table, ["alpha", "beta", "gap"], "sweep CSV");
  const cells = table.rows.map((row) => ({
    alpha: toNumber(row[idx.get("alpha")!], "alpha"),
    beta: toNumber(row[idx.get("beta")!], "beta"),
    gap: toNumber(row[idx.get("gap")!], "gap"),
  }));
  if (cells.length === 0) {
    throw new SpecError("sweep CSV has no data rows");
  }
  return cells;
}

export interface ResultRow {
  solver: string;
  nSteps: number;
  gap: number;
  runtimeS: number;
}

/** Benchmark results schema (family,...,gap,runtime_s). */
export function readResults(text: string): ResultRow[] {
  const table = parseCsv(text);
  const idx = requireColumns(
    table,
    ["solver", "n_steps", "gap", "runtime_s"],
    "results CSV"
  );
  const rows = table.rows.map((row) => ({
    solver: row[idx.get("solver")!],
    nSteps: toNumber(row[idx.get("n_steps")!], "n_steps"),
    gap: toNumber(row[idx.get("gap")!], "gap"),
    runtimeS: toNumber(row[idx.get("runtime_s")!], "runtime_s"),
  }));
  if (rows.length === 0) {
    throw new SpecError("results CSV has no data rows");
  }
  return rows;
}
