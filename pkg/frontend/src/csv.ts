import { readFileSync } from "node:fs";

/** Raised for CSV text that is not a rectangular numeric table. */
export class CsvFormatError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "CsvFormatError";
  }
}

export interface NumericTable {
  header: string[];
  /** rows[i][j] aligns with header[j]; "nan" cells become NaN. */
  rows: number[][];
}

/**
 * Parse a comma-separated table of numbers with a single header line.
 *
 * Blank lines are skipped. Every data row must have exactly as many
 * cells as the header, and every cell must parse as a finite float,
 * "nan", or a signed "inf".
 */
export function parseNumericCsv(text: string, name = "csv"): NumericTable {
  const lines = text.split(/\r?\n/).filter((line) => line.trim() !== "");
  if (lines.length === 0) {
    throw new CsvFormatError(`${name}: empty file`);
  }
  const header = lines[0].split(",").map((cell) => cell.trim());
  if (header.some((cell) => cell === "")) {
    throw new CsvFormatError(`${name}: blank column name in header`);
  }
  const rows: number[][] = [];
  for (let i = 1; i < lines.length; i += 1) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new CsvFormatError(
        `${name}: line ${i + 1} has ${cells.length} cells, expected ${header.length}`,
      );
    }
    const row = cells.map((cell) => {
      const token = cell.trim();
      const value = parseNumber(token);
      if (value === undefined) {
        throw new CsvFormatError(`${name}: non-numeric value "${token}" on line ${i + 1}`);
      }
      return value;
    });
    rows.push(row);
  }
  return { header, rows };
}

export function readNumericCsv(path: string): NumericTable {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new CsvFormatError(`${path}: unreadable file: ${(err as Error).message}`);
  }
  return parseNumericCsv(text, path);
}

/** Extract one named column; throws when the header lacks it. */
export function column(table: NumericTable, name: string, label = "csv"): number[] {
  const j = table.header.indexOf(name);
  if (j < 0) {
    throw new CsvFormatError(`${label}: missing column "${name}" (have: ${table.header.join(", ")})`);
  }
  return table.rows.map((row) => row[j]);
}

export interface Trajectory {
  t: number[];
  /** positions[i] is the dims-vector at t[i]. */
  positions: number[][];
}

/**
 * Read a classical-path CSV (columns t, x_1 .. x_N, optionally more).
 * Used for the overlay curve in rendered movies.
 */
export function readTrajectory(path: string): Trajectory {
  const table = readNumericCsv(path);
  const t = column(table, "t", path);
  const positions: number[][] = t.map(() => []);
  for (let d = 1; ; d += 1) {
    if (!table.header.includes(`x_${d}`)) {
      if (d === 1) {
        throw new CsvFormatError(`${path}: missing column "x_1"`);
      }
      break;
    }
    const xs = column(table, `x_${d}`, path);
    xs.forEach((x, i) => positions[i].push(x));
  }
  return { t, positions };
}

export interface SweepSummary {
  epsilon: number[];
  maxError: number[];
}

/** Read an error-sweep summary CSV (epsilon, max_h_eps_error, ...). */
export function readSweepSummary(path: string): SweepSummary {
  const table = readNumericCsv(path);
  const epsilon = column(table, "epsilon", path);
  const maxError = column(table, "max_h_eps_error", path);
  if (epsilon.length === 0) {
    throw new CsvFormatError(`${path}: no data rows`);
  }
  epsilon.forEach((eps, i) => {
    if (!(eps > 0) || !(maxError[i] > 0)) {
      throw new CsvFormatError(
        `${path}: line ${i + 2}: epsilon and max_h_eps_error must be positive for a log-log plot`,
      );
    }
  });
  return { epsilon, maxError };
}

function parseNumber(token: string): number | undefined {
  if (token === "") return undefined;
  const lowered = token.toLowerCase();
  if (lowered === "nan") return NaN;
  if (lowered === "inf" || lowered === "+inf" || lowered === "infinity") return Infinity;
  if (lowered === "-inf" || lowered === "-infinity") return -Infinity;
  const value = Number(token);
  return Number.isNaN(value) ? undefined : value;
}
