/** Box plots of final normalized values, one box per optimizer per problem. */

import { BoxplotRow, groupOrder } from "./schema.js";
import { THEME, seriesColor } from "./theme.js";
import { SvgDoc, line, linearScale, px, rect, text, ticks } from "./svg.js";

export interface BoxStats {
  median: number;
  q1: number;
  q3: number;
  lo: number;
  hi: number;
}

/** Linear-interpolated quantile (matches numpy's default). */
export function quantile(sorted: number[], q: number): number {
  const n = sorted.length;
  if (n === 1) {
    return sorted[0];
  }
  const pos = q * (n - 1);
  const base = Math.floor(pos);
  const frac = pos - base;
  return base + 1 < n
    ? sorted[base] + frac * (sorted[base + 1] - sorted[base])
    : sorted[base];
}

export function boxStats(values: number[]): BoxStats {
  const sorted = values.slice().sort((a, b) => a - b);
  return {
    median: quantile(sorted, 0.5),
    q1: quantile(sorted, 0.25),
    q3: quantile(sorted, 0.75),
    lo: sorted[0],
    hi: sorted[sorted.length - 1],
  };
}

export function renderBoxplot(rows: BoxplotRow[]): string {
  if (rows.length === 0) {
    throw new Error("box-plot CSV has no data rows");
  }
  const problems = groupOrder(rows, (r) => r.problem);
  const groups: Array<{ problem: string; optimizer: string; values: number[] }> = [];
  for (const problem of problems) {
    for (const optimizer of groupOrder(
      rows.filter((r) => r.problem === problem),
      (r) => r.optimizer,
    )) {
      groups.push({
        problem,
        optimizer,
        values: rows
          .filter((r) => r.problem === problem && r.optimizer === optimizer)
          .map((r) => r.normalized),
      });
    }
  }

  const { width, height, margin } = THEME;
  const yScale = linearScale([-0.05, 1.05], [height - margin.bottom, margin.top]);
  const slot = (width - margin.left - margin.right) / groups.length;

  const doc = new SvgDoc(width, height, THEME.background);
  for (const t of ticks(0, 1, 5)) {
    const y = yScale(t);
    doc.add(line(margin.left, y, width - margin.right, y, THEME.gridColor, 0.5));
    doc.add(text(margin.left - 8, y + 4, String(t), THEME.fontSize, THEME.fontFamily, "end"));
  }
  doc.add(line(margin.left, margin.top, margin.left, height - margin.bottom, THEME.axisColor));
  doc.add(
    line(margin.left, height - margin.bottom, width - margin.right, height - margin.bottom, THEME.axisColor),
  );
  doc.add(
    text(
      (margin.left + width - margin.right) / 2,
      22,
      problems.length === 1 ? problems[0] : "final log10 HV difference (normalized)",
      THEME.titleSize,
      THEME.fontFamily,
      "middle",
    ),
  );

  groups.forEach((group, i) => {
    const cx = margin.left + slot * (i + 0.5);
    const color = seriesColor(i % THEME.palette.length);
    const stats = boxStats(group.values);
    const w = Math.min(THEME.boxWidth, slot * 0.6);
    const attrs =
      ` data-role="box" data-problem="${group.problem}" data-optimizer="${group.optimizer}"` +
      ` data-median="${String(stats.median)}" data-q1="${String(stats.q1)}" data-q3="${String(stats.q3)}"` +
      ` data-n="${group.values.length}"`;
    doc.add(`<g${attrs}>`);
    doc.add(line(cx, yScale(stats.lo), cx, yScale(stats.q1), THEME.axisColor));
    doc.add(line(cx, yScale(stats.q3), cx, yScale(stats.hi), THEME.axisColor));
    doc.add(line(cx - w / 4, yScale(stats.lo), cx + w / 4, yScale(stats.lo), THEME.axisColor));
    doc.add(line(cx - w / 4, yScale(stats.hi), cx + w / 4, yScale(stats.hi), THEME.axisColor));
    const top = yScale(stats.q3);
    const bottom = yScale(stats.q1);
    doc.add(rect(cx - w / 2, top, w, Math.max(bottom - top, 0.5), color + "33", color));
    doc.add(line(cx - w / 2, yScale(stats.median), cx + w / 2, yScale(stats.median), "#111111", 1.8));
    doc.add(`</g>`);
    const label =
      problems.length === 1 ? group.optimizer : `${group.problem}:${group.optimizer}`;
    doc.add(
      `<text x="${px(cx)}" y="${px(height - margin.bottom + 16)}" font-size="${THEME.fontSize}" ` +
        `font-family="${THEME.fontFamily}" text-anchor="end" fill="#222222" ` +
        `transform="rotate(-30 ${px(cx)} ${px(height - margin.bottom + 16)})">${label}</text>`,
    );
  });
  return doc.render();
}
