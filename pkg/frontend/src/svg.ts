/** Deterministic SVG assembly (plain strings, no DOM). */

export function px(v: number): string {
  // fixed decimals keep coordinates byte-stable across runs
  return v.toFixed(2);
}

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  fn.range = range;
  return fn;
}

export function ticks(lo: number, hi: number, count = 6): number[] {
  if (hi <= lo) {
    return [lo];
  }
  const rawStep = (hi - lo) / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const norm = rawStep / mag;
  const step = (norm >= 5 ? 5 : norm >= 2 ? 2 : 1) * mag;
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-12; v += step) {
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}

export class SvgDoc {
  private parts: string[] = [];

  constructor(width: number, height: number, background: string) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}">`,
    );
    this.parts.push(
      `<rect x="0" y="0" width="${width}" height="${height}" fill="${background}"/>`,
    );
  }

  add(fragment: string): void {
    this.parts.push(fragment);
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

export function polyline(
  points: Array<[number, number]>,
  stroke: string,
  width: number,
  attrs = "",
): string {
  const pts = points.map(([x, y]) => `${px(x)},${px(y)}`).join(" ");
  return `<polyline fill="none" stroke="${stroke}" stroke-width="${width}" points="${pts}"${attrs}/>`;
}

export function polygon(
  points: Array<[number, number]>,
  fill: string,
  opacity: string,
  attrs = "",
): string {
  const pts = points.map(([x, y]) => `${px(x)},${px(y)}`).join(" ");
  return `<polygon fill="${fill}" fill-opacity="${opacity}" stroke="none" points="${pts}"${attrs}/>`;
}

export function line(
  x1: number,
  y1: number,
  x2: number,
  y2: number,
  stroke: string,
  width = 1,
): string {
  return `<line x1="${px(x1)}" y1="${px(y1)}" x2="${px(x2)}" y2="${px(y2)}" stroke="${stroke}" stroke-width="${width}"/>`;
}

export function rect(
  x: number,
  y: number,
  w: number,
  h: number,
  fill: string,
  stroke: string,
  attrs = "",
): string {
  return `<rect x="${px(x)}" y="${px(y)}" width="${px(w)}" height="${px(h)}" fill="${fill}" stroke="${stroke}"${attrs}/>`;
}

export function text(
  x: number,
  y: number,
  content: string,
  size: number,
  family: string,
  anchor: "start" | "middle" | "end" = "start",
  attrs = "",
): string {
  return (
    `<text x="${px(x)}" y="${px(y)}" font-size="${size}" font-family="${esc(family)}" ` +
    `text-anchor="${anchor}" fill="#222222"${attrs}>${esc(content)}</text>`
  );
}
