#!/usr/bin/env node
/** CLI: plot --kind {convergence,boxplot} --in <csv> --out <file> */

import { readFileSync, writeFileSync } from "node:fs";
import { renderBoxplot } from "./boxplot.js";
import { renderConvergence } from "./convergence.js";
import { readBoxplot, readConvergence } from "./schema.js";

function usage(): never {
  console.error("usage: tmobo-plot plot --kind {convergence,boxplot} --in <csv> --out <svg>");
  process.exit(2);
}

export function main(argv: string[]): number {
  if (argv[0] !== "plot") {
    usage();
  }
  const args = new Map<string, string>();
  for (let i = 1; i < argv.length; i += 2) {
    if (!argv[i].startsWith("--") || i + 1 >= argv.length) {
      usage();
    }
    args.set(argv[i].slice(2), argv[i + 1]);
  }
  const kind = args.get("kind");
  const input = args.get("in");
  const output = args.get("out");
  if (!kind || !input || !output) {
    usage();
  }
  const text = readFileSync(input, "utf-8");
  let svg: string;
  if (kind === "convergence") {
    svg = renderConvergence(readConvergence(text));
  } else if (kind === "boxplot") {
    svg = renderBoxplot(readBoxplot(text));
  } else {
    usage();
  }
  writeFileSync(output, svg, "utf-8");
  console.log(`wrote ${output}`);
  return 0;
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("cli.js") || entry.endsWith("cli.ts")) {
  process.exit(main(process.argv.slice(2)));
}
