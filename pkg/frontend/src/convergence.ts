/** Convergence figure: one mean line per optimizer with a 2-SE band. */

import { ConvergenceRow, groupOrder } from "./schema.js";
import { THEME, seriesColor } from "./theme.js";
import { SvgDoc, line, linearScale, polygon, polyline, text, ticks } from "./svg.js";

const AXIS_LABEL: Record<string, string> = {
  iter: "iterations",
  epochs: "cumulative epochs",
  cost: "cumulative cost",
};

export function renderConvergence(rows: ConvergenceRow[]): string {
  if (rows.length === 0) {
    throw new Error("convergence CSV has no data rows");
  }
  const problems = groupOrder(rows, (r) => r.problem);
  if (problems.length !== 1) {
    throw new Error(`convergence figure expects one problem, got ${problems.length}`);
  }
  const axes = new Set(rows.map((r) => r.axis));
  if (axes.size !== 1) {
    throw new Error("convergence CSV mixes axis kinds");
  }
  const axis = rows[0].axis;
  const optimizers = groupOrder(rows, (r) => r.optimizer);

  const { width, height, margin } = THEME;
  const xs = rows.map((r) => r.grid);
  const lows = rows.map((r) => r.mean - 2 * r.se);
  const highs = rows.map((r) => r.mean + 2 * r.se);
  const xScale = linearScale(
    [Math.min(...xs), Math.max(...xs)],
    [margin.left, width - margin.right],
  );
  const pad = 0.05 * (Math.max(...highs) - Math.min(...lows) || 1);
  const yScale = linearScale(
    [Math.min(...lows) - pad, Math.max(...highs) + pad],
    [height - margin.bottom, margin.top],
  );

  const doc = new SvgDoc(width, height, THEME.background);
  drawFrame(doc, xScale, yScale, AXIS_LABEL[axis] ?? axis, problems[0]);

  optimizers.forEach((opt, i) => {
    const series = rows.filter((r) => r.optimizer === opt);
    const color = seriesColor(i);
    const upper: Array<[number, number]> = series.map((r) => [
      xScale(r.grid),
      yScale(r.mean + 2 * r.se),
    ]);
    const lower: Array<[number, number]> = series
      .slice()
      .reverse()
      .map((r) => [xScale(r.grid), yScale(r.mean - 2 * r.se)]);
    const grids = series.map((r) => String(r.grid)).join(" ");
    const halfWidths = series.map((r) => String(2 * r.se)).join(" ");
    doc.add(
      polygon(
        upper.concat(lower),
        color,
        THEME.bandOpacity,
        ` data-role="band" data-optimizer="${opt}" data-grids="${grids}" data-half-widths="${halfWidths}"`,
      ),
    );
    doc.add(
      polyline(
        series.map((r) => [xScale(r.grid), yScale(r.mean)]),
        color,
        1.8,
        ` data-role="mean" data-optimizer="${opt}"`,
      ),
    );
    const lx = width - margin.right - 150;
    const ly = margin.top + 16 * i + 4;
    doc.add(line(lx, ly - 4, lx + 22, ly - 4, color, 2.5));
    doc.add(text(lx + 28, ly, opt, THEME.fontSize, THEME.fontFamily));
  });
  return doc.render();
}

function drawFrame(
  doc: SvgDoc,
  xScale: ReturnType<typeof linearScale>,
  yScale: ReturnType<typeof linearScale>,
  xLabel: string,
  title: string,
): void {
  const { width, height, margin } = THEME;
  const [xLo, xHi] = xScale.domain;
  const [yLo, yHi] = yScale.domain;
  for (const t of ticks(yLo, yHi)) {
    const y = yScale(t);
    doc.add(line(margin.left, y, width - margin.right, y, THEME.gridColor, 0.5));
    doc.add(
      text(margin.left - 8, y + 4, formatTick(t), THEME.fontSize, THEME.fontFamily, "end"),
    );
  }
  for (const t of ticks(xLo, xHi)) {
    const x = xScale(t);
    doc.add(
      text(x, height - margin.bottom + 18, formatTick(t), THEME.fontSize, THEME.fontFamily, "middle"),
    );
  }
  doc.add(line(margin.left, margin.top, margin.left, height - margin.bottom, THEME.axisColor));
  doc.add(
    line(margin.left, height - margin.bottom, width - margin.right, height - margin.bottom, THEME.axisColor),
  );
  doc.add(
    text(
      (margin.left + width - margin.right) / 2,
      height - 14,
      xLabel,
      THEME.fontSize,
      THEME.fontFamily,
      "middle",
    ),
  );
  doc.add(
    text(16, (margin.top + height - margin.bottom) / 2, "log10 HV difference", THEME.fontSize, THEME.fontFamily, "middle", ' transform="rotate(-90 16 ' + ((margin.top + height - margin.bottom) / 2).toFixed(2) + ')"'),
  );
  doc.add(text((margin.left + width - margin.right) / 2, 22, title, THEME.titleSize, THEME.fontFamily, "middle"));
}

function formatTick(v: number): string {
  return Math.abs(v) >= 1000 ? v.toExponential(1) : String(Number(v.toPrecision(6)));
}
