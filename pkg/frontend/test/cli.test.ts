import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { main } from "../src/cli.js";

const CONVERGENCE = [
  "problem,optimizer,axis,grid,mean,sd,se,n_trials",
  "zdt1_mm,tmobo,iter,0,-0.5,0.2,0.1,4",
  "zdt1_mm,tmobo,iter,1,-1.5,0.1,0.05,4",
  "zdt1_mm,random_t,iter,0,-0.2,0.2,0.1,4",
  "zdt1_mm,random_t,iter,1,-0.4,0.3,0.15,4",
  "",
].join("\n");

describe("plot CLI", () => {
  it("renders a convergence SVG from a CSV file", () => {
    const dir = mkdtempSync(join(tmpdir(), "tmobo-plots-"));
    const csvPath = join(dir, "convergence.csv");
    const outPath = join(dir, "convergence.svg");
    writeFileSync(csvPath, CONVERGENCE, "utf-8");
    const code = main(["plot", "--kind", "convergence", "--in", csvPath, "--out", outPath]);
    expect(code).toBe(0);
    const svg = readFileSync(outPath, "utf-8");
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg).toContain('data-optimizer="tmobo"');
    expect(svg).toContain('data-optimizer="random_t"');
  });
});
