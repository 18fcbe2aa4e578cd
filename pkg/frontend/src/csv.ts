/** Strict CSV reading for figure bundles: a header row followed by numeric
 * data rows.  Schema violations throw errors naming the file and column. */

import { readFileSync } from "node:fs";

export interface Table {
  path: string;
  columns: string[];
  /** column name -> numeric values, one per data row */
  data: Map<string, number[]>;
  rowCount: number;
}

export class CsvError extends Error {}

export function parseCsv(path: string, text: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvError(`${path}: empty file`);
  }
  const columns = lines[0].split(",").map((c) => c.trim());
  if (new Set(columns).size !== columns.length) {
    throw new CsvError(`${path}: duplicate column names in header`);
  }
  const rows = lines.slice(1);
  if (rows.length === 0) {
    throw new CsvError(`${path}: no data rows`);
  }
  const data = new Map<string, number[]>(columns.map((c) => [c, []]));
  rows.forEach((line, i) => {
    const cells = line.split(",");
    if (cells.length !== columns.length) {
      throw new CsvError(
        `${path}: row ${i + 1} has ${cells.length} cells, expected ${columns.length}`,
      );
    }
    cells.forEach((cell, j) => {
      const value = Number(cell);
      if (!Number.isFinite(value)) {
        throw new CsvError(
          `${path}: row ${i + 1}, column "${columns[j]}": not a finite number (${cell})`,
        );
      }
      data.get(columns[j])!.push(value);
    });
  });
  return { path, columns, data, rowCount: rows.length };
}

export function readCsv(path: string): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch (err) {
    throw new CsvError(`${path}: cannot read (${(err as Error).message})`);
  }
  return parseCsv(path, text);
}

/** Fetch a column, failing with the file and column name if absent. */
export function column(table: Table, name: string): number[] {
  const values = table.data.get(name);
  if (values === undefined) {
    throw new CsvError(`${table.path}: missing column "${name}"`);
  }
  return values;
}

/** Validate that every declared column is present before plotting. */
export function requireColumns(table: Table, names: string[]): void {
  for (const name of names) {
    column(table, name);
  }
}
