/** Harness report schemas consumed by the plotting commands. */

import { Table, asNumber, parseCsv, requireColumns } from "./csv.js";

export const CONVERGENCE_COLUMNS = [
  "problem",
  "optimizer",
  "axis",
  "grid",
  "mean",
  "sd",
  "se",
  "n_trials",
];

export const BOXPLOT_COLUMNS = [
  "problem",
  "optimizer",
  "trial",
  "final_log10_hv_diff",
  "normalized",
];

export interface ConvergenceRow {
  problem: string;
  optimizer: string;
  axis: string;
  grid: number;
  mean: number;
  sd: number;
  se: number;
  nTrials: number;
}

export interface BoxplotRow {
  problem: string;
  optimizer: string;
  trial: number;
  final: number;
  normalized: number;
}

export function readConvergence(text: string): ConvergenceRow[] {
  const table: Table = parseCsv(text);
  requireColumns(table, CONVERGENCE_COLUMNS, "convergence CSV");
  return table.rows.map((r, i) => ({
    problem: r[0],
    optimizer: r[1],
    axis: r[2],
    grid: asNumber(r[3], `row ${i + 2} grid`),
    mean: asNumber(r[4], `row ${i + 2} mean`),
    sd: asNumber(r[5], `row ${i + 2} sd`),
    se: asNumber(r[6], `row ${i + 2} se`),
    nTrials: asNumber(r[7], `row ${i + 2} n_trials`),
  }));
}

export function readBoxplot(text: string): BoxplotRow[] {
  const table: Table = parseCsv(text);
  requireColumns(table, BOXPLOT_COLUMNS, "box-plot CSV");
  return table.rows.map((r, i) => ({
    problem: r[0],
    optimizer: r[1],
    trial: asNumber(r[2], `row ${i + 2} trial`),
    final: asNumber(r[3], `row ${i + 2} final`),
    normalized: asNumber(r[4], `row ${i + 2} normalized`),
  }));
}

/** First-appearance order of a key, preserving the CSV group order. */
export function groupOrder<T>(rows: T[], key: (row: T) => string): string[] {
  const seen = new Set<string>();
  const order: string[] = [];
  for (const row of rows) {
    const k = key(row);
    if (!seen.has(k)) {
      seen.add(k);
      order.push(k);
    }
  }
  return order;
}
