/** Minimal strict CSV reading for the harness report schemas. */

export interface Table {
  columns: string[];
  rows: string[][];
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new Error("empty CSV");
  }
  const columns = splitLine(lines[0]);
  const rows = lines.slice(1).map((line, i) => {
    const cells = splitLine(line);
    if (cells.length !== columns.length) {
      throw new Error(`row ${i + 2}: expected ${columns.length} fields, got ${cells.length}`);
    }
    return cells;
  });
  return { columns, rows };
}

function splitLine(line: string): string[] {
  // The harness writes unquoted fields; reject quoting rather than
  // mis-parse it silently.
  if (line.includes('"')) {
    throw new Error("quoted CSV fields are not part of the harness schema");
  }
  return line.split(",");
}

export function requireColumns(table: Table, expected: string[], label: string): void {
  const ok =
    table.columns.length === expected.length &&
    expected.every((c, i) => table.columns[i] === c);
  if (!ok) {
    throw new Error(
      `${label}: expected columns [${expected.join(",")}], got [${table.columns.join(",")}]`,
    );
  }
}

export function asNumber(value: string, label: string): number {
  const num = Number(value);
  if (!Number.isFinite(num)) {
    throw new Error(`${label}: not a finite number: ${value}`);
  }
  return num;
}
