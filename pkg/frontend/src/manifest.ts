/** Figure-bundle manifest loading and validation. */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";

export const PLOT_KINDS = [
  "bloch_path",
  "line",
  "staircase",
  "heatmap",
  "population_traces",
] as const;

export type PlotKind = (typeof PLOT_KINDS)[number];

export interface FileEntry {
  path: string;
  plot_kind: PlotKind;
  columns: string[];
  x?: string;
  y?: string;
  ys?: string[];
  value?: string;
  series?: string;
  contours?: number[];
  grid_shape?: [number, number];
}

export interface Manifest {
  figure: string;
  title?: string;
  notes?: string[];
  files: FileEntry[];
  /** directory the CSV paths are relative to */
  baseDir: string;
}

export class ManifestError extends Error {}

function asStringArray(value: unknown, context: string): string[] {
  if (!Array.isArray(value) || !value.every((v) => typeof v === "string")) {
    throw new ManifestError(`${context}: expected an array of strings`);
  }
  return value;
}

export function loadManifest(path: string): Manifest {
  let raw: unknown;
  try {
    raw = JSON.parse(readFileSync(path, "utf-8"));
  } catch (err) {
    throw new ManifestError(`${path}: cannot parse (${(err as Error).message})`);
  }
  if (typeof raw !== "object" || raw === null) {
    throw new ManifestError(`${path}: manifest must be a JSON object`);
  }
  const obj = raw as Record<string, unknown>;
  if (typeof obj.figure !== "string") {
    throw new ManifestError(`${path}: missing "figure" id`);
  }
  if (!Array.isArray(obj.files) || obj.files.length === 0) {
    throw new ManifestError(`${path}: manifest lists no files`);
  }
  const files = obj.files.map((entry, i) => {
    const context = `${path}: files[${i}]`;
    if (typeof entry !== "object" || entry === null) {
      throw new ManifestError(`${context}: expected an object`);
    }
    const e = entry as Record<string, unknown>;
    if (typeof e.path !== "string") {
      throw new ManifestError(`${context}: missing "path"`);
    }
    if (typeof e.plot_kind !== "string" || !PLOT_KINDS.includes(e.plot_kind as PlotKind)) {
      throw new ManifestError(
        `${context}: plot_kind must be one of ${PLOT_KINDS.join(", ")}`,
      );
    }
    const file: FileEntry = {
      path: e.path,
      plot_kind: e.plot_kind as PlotKind,
      columns: asStringArray(e.columns, `${context}.columns`),
    };
    if (e.x !== undefined) file.x = String(e.x);
    if (e.y !== undefined) file.y = String(e.y);
    if (e.ys !== undefined) file.ys = asStringArray(e.ys, `${context}.ys`);
    if (e.value !== undefined) file.value = String(e.value);
    if (e.series !== undefined) file.series = String(e.series);
    if (e.contours !== undefined) {
      if (!Array.isArray(e.contours) || !e.contours.every((v) => typeof v === "number")) {
        throw new ManifestError(`${context}.contours: expected numbers`);
      }
      file.contours = e.contours as number[];
    }
    if (e.grid_shape !== undefined) {
      const shape = e.grid_shape;
      if (!Array.isArray(shape) || shape.length !== 2) {
        throw new ManifestError(`${context}.grid_shape: expected [nx, ny]`);
      }
      file.grid_shape = [Number(shape[0]), Number(shape[1])];
    }
    return file;
  });
  return {
    figure: obj.figure,
    title: typeof obj.title === "string" ? obj.title : undefined,
    notes: Array.isArray(obj.notes) ? obj.notes.map(String) : undefined,
    files,
    baseDir: dirname(path),
  };
}

export function csvPath(manifest: Manifest, entry: FileEntry): string {
  return join(manifest.baseDir, entry.path);
}
