import { describe, expect, it } from "vitest";
import { boxStats, quantile, renderBoxplot } from "../src/boxplot.js";
import { readBoxplot } from "../src/schema.js";

function csvFor(values: Record<string, number[]>, problem = "zdt1_mm"): string {
  const lines = ["problem,optimizer,trial,final_log10_hv_diff,normalized"];
  for (const [opt, vals] of Object.entries(values)) {
    vals.forEach((v, i) => lines.push(`${problem},${opt},${i},${v - 1},${v}`));
  }
  return lines.join("\n") + "\n";
}

function medianOf(svg: string, optimizer: string): number {
  const re = new RegExp(
    `<g[^>]*data-optimizer="${optimizer}"[^>]*data-median="([^"]*)"`,
  );
  const match = svg.match(re);
  if (!match) {
    throw new Error(`no box for ${optimizer}`);
  }
  return Number(match[1]);
}

describe("box-plot rendering", () => {
  it("annotates medians matching an independent recomputation", () => {
    const data = {
      tmobo: [0.1, 0.3, 0.2, 0.05],
      random_t: [0.9, 0.8, 0.85, 1.0, 0.7],
    };
    const svg = renderBoxplot(readBoxplot(csvFor(data)));
    for (const [opt, vals] of Object.entries(data)) {
      const sorted = vals.slice().sort((a, b) => a - b);
      const mid = sorted.length % 2
        ? sorted[(sorted.length - 1) / 2]
        : (sorted[sorted.length / 2 - 1] + sorted[sorted.length / 2]) / 2;
      expect(Math.abs(medianOf(svg, opt) - mid)).toBeLessThan(1e-9);
    }
  });

  it("draws a degenerate box for constant values", () => {
    const svg = renderBoxplot(readBoxplot(csvFor({ tmobo: [0.5, 0.5, 0.5] })));
    const stats = boxStats([0.5, 0.5, 0.5]);
    expect(stats.q1).toBe(0.5);
    expect(stats.q3).toBe(0.5);
    expect(medianOf(svg, "tmobo")).toBe(0.5);
  });

  it("orders boxes by CSV group order", () => {
    const svg = renderBoxplot(
      readBoxplot(csvFor({ zeta: [0.2, 0.4], alpha: [0.6, 0.8] })),
    );
    const order = [...svg.matchAll(/data-role="box"[^>]*data-optimizer="(\w+)"/g)].map(
      (m) => m[1],
    );
    expect(order).toEqual(["zeta", "alpha"]);
  });

  it("is byte-stable across regenerations", () => {
    const csv = csvFor({ a: [0.1, 0.2, 0.9], b: [0.4, 0.5, 0.6] });
    expect(renderBoxplot(readBoxplot(csv))).toBe(renderBoxplot(readBoxplot(csv)));
  });

  it("quantile interpolates linearly", () => {
    expect(quantile([1, 2, 3, 4], 0.5)).toBe(2.5);
    expect(quantile([1, 2, 3, 4], 0.25)).toBe(1.75);
    expect(quantile([7], 0.5)).toBe(7);
  });

  it("rejects schema mismatches", () => {
    expect(() => readBoxplot("nope,cols\n1,2\n")).toThrow(/expected columns/);
    expect(() => renderBoxplot([])).toThrow(/no data/);
  });
});
