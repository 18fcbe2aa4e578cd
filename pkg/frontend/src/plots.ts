/** The five plot kinds a figure bundle can request. */

import { column, requireColumns, Table } from "./csv.js";
import { FileEntry } from "./manifest.js";
import { extent, formatTick, linearScale, Scale, ticks } from "./scale.js";
import { SERIES_COLORS, SvgDocument } from "./svg.js";

export interface Rect {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface Series {
  entry: FileEntry;
  table: Table;
}

function drawFrame(svg: SvgDocument, rect: Rect): void {
  svg.rect(rect.x, rect.y, rect.width, rect.height, "none", {
    stroke: "#444",
    "stroke-width": 1,
  });
}

function drawXAxis(svg: SvgDocument, rect: Rect, scale: Scale, label: string): void {
  for (const t of ticks(scale.domain)) {
    const px = scale.map(t);
    svg.line(px, rect.y + rect.height, px, rect.y + rect.height + 4, "#444");
    svg.text(px, rect.y + rect.height + 16, formatTick(t), { anchor: "middle", size: 10 });
  }
  svg.text(rect.x + rect.width / 2, rect.y + rect.height + 34, label, {
    anchor: "middle",
  });
}

function drawYAxis(svg: SvgDocument, rect: Rect, scale: Scale, label: string): void {
  for (const t of ticks(scale.domain)) {
    const py = scale.map(t);
    svg.line(rect.x - 4, py, rect.x, py, "#444");
    svg.text(rect.x - 7, py + 3, formatTick(t), { anchor: "end", size: 10 });
  }
  svg.text(rect.x - 48, rect.y + rect.height / 2, label, {
    anchor: "middle",
    rotate: true,
  });
}

function drawLegend(svg: SvgDocument, rect: Rect, labels: string[]): void {
  labels.forEach((label, i) => {
    const y = rect.y + 14 + 16 * i;
    const x = rect.x + rect.width - 120;
    svg.line(x, y - 4, x + 18, y - 4, SERIES_COLORS[i % SERIES_COLORS.length], 2);
    svg.text(x + 23, y, label, { size: 11 });
  });
}

function points(xs: number[], ys: number[], sx: Scale, sy: Scale): Array<[number, number]> {
  return xs.map((x, i) => [sx.map(x), sy.map(ys[i])] as [number, number]);
}

/** Overlaid x-y series, one per file entry. */
export function renderLineChart(svg: SvgDocument, rect: Rect, series: Series[]): void {
  const xName = series[0].entry.x ?? series[0].entry.columns[0];
  const yName = series[0].entry.y ?? series[0].entry.columns[1];
  const allX: number[] = [];
  const allY: number[] = [];
  for (const s of series) {
    requireColumns(s.table, s.entry.columns);
    allX.push(...column(s.table, s.entry.x ?? xName));
    allY.push(...column(s.table, s.entry.y ?? yName));
  }
  const sx = linearScale(extent(allX), [rect.x, rect.x + rect.width]);
  const sy = linearScale(extent(allY), [rect.y + rect.height, rect.y]);
  drawFrame(svg, rect);
  drawXAxis(svg, rect, sx, xName);
  drawYAxis(svg, rect, sy, yName);
  series.forEach((s, i) => {
    const xs = column(s.table, s.entry.x ?? xName);
    const ys = column(s.table, s.entry.y ?? yName);
    svg.polyline(points(xs, ys, sx, sy), SERIES_COLORS[i % SERIES_COLORS.length], 2);
  });
  drawLegend(svg, rect, series.map((s, i) => s.entry.series ?? `series ${i + 1}`));
}

/** Multiple columns of one file against a shared x axis. */
export function renderTraces(
  svg: SvgDocument,
  rect: Rect,
  s: Series,
  step = false,
): void {
  requireColumns(s.table, s.entry.columns);
  const xName = s.entry.x ?? s.entry.columns[0];
  const yNames = s.entry.ys ?? s.entry.columns.slice(1);
  const xs = column(s.table, xName);
  const panelGap = 14;
  const panels = step ? yNames.length : 1;
  const panelHeight = (rect.height - panelGap * (panels - 1)) / panels;
  if (!step) {
    const allY = yNames.flatMap((name) => column(s.table, name));
    const sx = linearScale(extent(xs), [rect.x, rect.x + rect.width]);
    const sy = linearScale(extent(allY), [rect.y + rect.height, rect.y]);
    drawFrame(svg, rect);
    drawXAxis(svg, rect, sx, xName);
    drawYAxis(svg, rect, sy, "value");
    yNames.forEach((name, i) => {
      svg.polyline(points(xs, column(s.table, name), sx, sy),
                   SERIES_COLORS[i % SERIES_COLORS.length], 1.8);
    });
    drawLegend(svg, rect, yNames);
    return;
  }
  // staircase: one stacked panel per column (the data carries doubled
  // boundary points, so a plain polyline renders the steps)
  yNames.forEach((name, i) => {
    const panel: Rect = {
      x: rect.x,
      y: rect.y + i * (panelHeight + panelGap),
      width: rect.width,
      height: panelHeight,
    };
    const ys = column(s.table, name);
    const sx = linearScale(extent(xs), [panel.x, panel.x + panel.width]);
    const sy = linearScale(extent(ys), [panel.y + panel.height, panel.y]);
    drawFrame(svg, panel);
    if (i === yNames.length - 1) drawXAxis(svg, panel, sx, xName);
    drawYAxis(svg, panel, sy, name);
    svg.polyline(points(xs, ys, sx, sy), SERIES_COLORS[i % SERIES_COLORS.length], 2);
  });
}

function heatColor(unit: number): string {
  // dark blue -> white -> dark red over [0, 1]
  const stops: Array<[number, [number, number, number]]> = [
    [0.0, [23, 63, 120]],
    [0.5, [245, 245, 245]],
    [1.0, [150, 26, 42]],
  ];
  const t = Math.min(1, Math.max(0, unit));
  for (let i = 1; i < stops.length; i++) {
    const [t1, c1] = stops[i - 1];
    const [t2, c2] = stops[i];
    if (t <= t2) {
      const f = (t - t1) / (t2 - t1);
      const rgb = c1.map((v, k) => Math.round(v + f * (c2[k] - v)));
      return `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
    }
  }
  return "rgb(150,26,42)";
}

/** Grid heatmap with contour outlines at the requested levels. */
export function renderHeatmap(svg: SvgDocument, rect: Rect, s: Series): void {
  requireColumns(s.table, s.entry.columns);
  const xName = s.entry.x ?? s.entry.columns[0];
  const yName = s.entry.y ?? s.entry.columns[1];
  const vName = s.entry.value ?? "infidelity";
  const xs = column(s.table, xName);
  const ys = column(s.table, yName);
  const vs = column(s.table, vName);
  let nx: number;
  let ny: number;
  if (s.entry.grid_shape) {
    [nx, ny] = s.entry.grid_shape;
  } else {
    ny = new Set(ys).size;
    nx = Math.round(vs.length / ny);
  }
  if (nx * ny !== vs.length) {
    throw new Error(`${s.table.path}: grid shape ${nx}x${ny} != ${vs.length} rows`);
  }
  // rows are outer-axis (x) major
  const value = (i: number, j: number) => vs[i * ny + j];
  const logs = vs.map((v) => Math.log10(Math.max(v, 1e-14)));
  const [lo, hi] = extent(logs);
  const sx = linearScale(extent(xs), [rect.x, rect.x + rect.width]);
  const sy = linearScale(extent(ys), [rect.y + rect.height, rect.y]);
  const cw = rect.width / nx;
  const ch = rect.height / ny;
  for (let i = 0; i < nx; i++) {
    for (let j = 0; j < ny; j++) {
      const v = Math.log10(Math.max(value(i, j), 1e-14));
      const unit = hi > lo ? (v - lo) / (hi - lo) : 0.5;
      svg.rect(rect.x + i * cw, rect.y + rect.height - (j + 1) * ch, cw + 0.5, ch + 0.5,
               heatColor(unit));
    }
  }
  // contour: outline boundaries between cells on opposite sides of a level
  for (const level of s.entry.contours ?? []) {
    for (let i = 0; i < nx; i++) {
      for (let j = 0; j < ny; j++) {
        const below = value(i, j) <= level;
        const x0 = rect.x + i * cw;
        const y0 = rect.y + rect.height - (j + 1) * ch;
        if (i + 1 < nx && below !== value(i + 1, j) <= level) {
          svg.line(x0 + cw, y0, x0 + cw, y0 + ch, "#111", 1.4);
        }
        if (j + 1 < ny && below !== value(i, j + 1) <= level) {
          svg.line(x0, y0, x0 + cw, y0, "#111", 1.4);
        }
      }
    }
    svg.text(rect.x + 4, rect.y - 6,
             `${s.entry.series ?? ""} (contour at ${vName} = ${level})`, { size: 11 });
  }
  drawFrame(svg, rect);
  drawXAxis(svg, rect, sx, xName);
  drawYAxis(svg, rect, sy, yName);
}

/** Bloch-sphere path in an oblique projection, one panel per trajectory. */
export function renderBlochPath(svg: SvgDocument, rect: Rect, s: Series): void {
  requireColumns(s.table, s.entry.columns);
  const xs = column(s.table, "x");
  const ys = column(s.table, "y");
  const zs = column(s.table, "z");
  const cx = rect.x + rect.width / 2;
  const cy = rect.y + rect.height / 2;
  const r = 0.42 * Math.min(rect.width, rect.height);
  const project = (x: number, y: number, z: number): [number, number] => [
    cx + r * (x - 0.38 * y),
    cy - r * (z - 0.22 * y),
  ];
  // sphere silhouette plus equator and pole axis for orientation
  svg.circle(cx, cy, r, "#999");
  const equator: Array<[number, number]> = [];
  for (let k = 0; k <= 72; k++) {
    const a = (2 * Math.PI * k) / 72;
    equator.push(project(Math.cos(a), Math.sin(a), 0));
  }
  svg.polyline(equator, "#ccc", 0.8);
  svg.line(cx, cy - r, cx, cy + r, "#ddd", 0.8);
  const path = xs.map((x, i) => project(x, ys[i], zs[i]));
  svg.polyline(path, SERIES_COLORS[0], 1.8);
  const [sx0, sy0] = path[0];
  const [sx1, sy1] = path[path.length - 1];
  svg.circle(sx0, sy0, 3, "#3a9a5c", "#3a9a5c");
  svg.circle(sx1, sy1, 3, "#d1495b", "#d1495b");
  svg.text(cx, rect.y + 12, s.entry.series ?? "", { anchor: "middle", size: 11 });
}
