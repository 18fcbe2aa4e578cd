/** Turn one figure bundle (manifest + CSVs) into one SVG image. */

import { mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { readCsv } from "./csv.js";
import { csvPath, loadManifest, Manifest } from "./manifest.js";
import {
  renderBlochPath,
  renderHeatmap,
  renderLineChart,
  renderTraces,
  Rect,
  Series,
} from "./plots.js";
import { DEFAULT_MARGIN, SvgDocument } from "./svg.js";

const PANEL = { width: 380, height: 300 };

function loadSeries(manifest: Manifest): Series[] {
  return manifest.files.map((entry) => ({
    entry,
    table: readCsv(csvPath(manifest, entry)),
  }));
}

function panelRect(index: number, columns: number): Rect {
  const col = index % columns;
  const row = Math.floor(index / columns);
  return {
    x: DEFAULT_MARGIN.left + col * (PANEL.width + DEFAULT_MARGIN.left),
    y: DEFAULT_MARGIN.top + row * (PANEL.height + DEFAULT_MARGIN.bottom + 20),
    width: PANEL.width,
    height: PANEL.height,
  };
}

export function renderManifest(manifestPath: string, outdir: string): string {
  const manifest = loadManifest(manifestPath);
  const series = loadSeries(manifest);
  const allLines = series.every((s) => s.entry.plot_kind === "line");

  let svg: SvgDocument;
  if (allLines) {
    // line series share one panel and a legend
    svg = new SvgDocument(
      PANEL.width + DEFAULT_MARGIN.left + DEFAULT_MARGIN.right,
      PANEL.height + DEFAULT_MARGIN.top + DEFAULT_MARGIN.bottom,
    );
    const rect: Rect = {
      x: DEFAULT_MARGIN.left,
      y: DEFAULT_MARGIN.top,
      width: PANEL.width,
      height: PANEL.height,
    };
    renderLineChart(svg, rect, series);
  } else {
    // every other kind gets one panel per file
    const columns = Math.min(series.length, 2);
    const rows = Math.ceil(series.length / columns);
    svg = new SvgDocument(
      columns * (PANEL.width + DEFAULT_MARGIN.left) + DEFAULT_MARGIN.right,
      rows * (PANEL.height + DEFAULT_MARGIN.bottom + 20) + DEFAULT_MARGIN.top,
    );
    series.forEach((s, i) => {
      const rect = panelRect(i, columns);
      if (s.entry.plot_kind === "heatmap") {
        renderHeatmap(svg, rect, s);
      } else if (s.entry.plot_kind === "bloch_path") {
        renderBlochPath(svg, rect, s);
      } else if (s.entry.plot_kind === "staircase") {
        renderTraces(svg, rect, s, true);
      } else if (s.entry.plot_kind === "population_traces") {
        renderTraces(svg, rect, s, false);
      } else {
        renderLineChart(svg, rect, [s]);
      }
    });
  }
  if (manifest.title) {
    svg.text(12, 18, `${manifest.figure}: ${manifest.title}`, { size: 13 });
  }
  mkdirSync(outdir, { recursive: true });
  const outPath = join(outdir, `${manifest.figure}.svg`);
  writeFileSync(outPath, svg.toString(), "utf-8");
  return outPath;
}
