/** Minimal SVG document builder: elements are accumulated as strings. */

export interface Margin {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export const DEFAULT_MARGIN: Margin = { top: 42, right: 24, bottom: 46, left: 64 };

export function escapeText(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function attrs(values: Record<string, string | number>): string {
  return Object.entries(values)
    .map(([k, v]) => `${k}="${typeof v === "number" ? fmt(v) : escapeText(v)}"`)
    .join(" ");
}

export function fmt(v: number): string {
  if (!Number.isFinite(v)) return "0";
  return Math.abs(v) < 1e-12 ? "0" : String(Math.round(v * 100) / 100);
}

export class SvgDocument {
  private parts: string[] = [];

  constructor(
    readonly width: number,
    readonly height: number,
  ) {}

  raw(fragment: string): void {
    this.parts.push(fragment);
  }

  rect(x: number, y: number, w: number, h: number, fill: string, extra: Record<string, string | number> = {}): void {
    this.parts.push(`<rect ${attrs({ x, y, width: w, height: h, fill, ...extra })}/>`);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, width = 1): void {
    this.parts.push(
      `<line ${attrs({ x1, y1, x2, y2, stroke, "stroke-width": width })}/>`,
    );
  }

  polyline(points: Array<[number, number]>, stroke: string, width = 1.5, dash = ""): void {
    const joined = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<polyline points="${joined}" fill="none" stroke="${stroke}" stroke-width="${width}"${dashAttr} class="series"/>`,
    );
  }

  circle(cx: number, cy: number, r: number, stroke: string, fill = "none"): void {
    this.parts.push(`<circle ${attrs({ cx, cy, r, stroke, fill })}/>`);
  }

  text(
    x: number,
    y: number,
    content: string,
    options: { size?: number; anchor?: string; rotate?: boolean; color?: string } = {},
  ): void {
    const size = options.size ?? 12;
    const anchor = options.anchor ?? "start";
    const color = options.color ?? "#222";
    const transform = options.rotate ? ` transform="rotate(-90 ${fmt(x)} ${fmt(y)})"` : "";
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" font-size="${size}" text-anchor="${anchor}" ` +
        `fill="${color}" font-family="sans-serif"${transform}>${escapeText(content)}</text>`,
    );
  }

  toString(): string {
    return (
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" height="${this.height}" ` +
      `viewBox="0 0 ${this.width} ${this.height}">\n<rect width="100%" height="100%" fill="white"/>\n` +
      this.parts.join("\n") +
      "\n</svg>\n"
    );
  }
}

export const SERIES_COLORS = ["#1f6fb2", "#d1495b", "#3a9a5c", "#a26bc2", "#e0922f", "#4d4d4d"];
