/**
 * Parser for the benchmark harness CSV.
 *
 * The harness writes one row per (policy, k, repetition) with the fixed
 * column set below; fields are never quoted.  `opt_cost` and `ratio` are
 * blank when the run had no oracle attached.
 */

export const REQUIRED_COLUMNS = [
  "policy",
  "k",
  "seed",
  "trace_len",
  "total_cost",
  "cost_per_request",
  "phases",
  "clean",
  "stale",
  "bypasses",
  "opt_cost",
  "ratio",
] as const;

export interface ResultRow {
  policy: string;
  k: number;
  seed: number;
  traceLen: number;
  totalCost: number;
  costPerRequest: number;
  phases: number;
  clean: number;
  stale: number;
  bypasses: number;
  optCost: number | null;
  ratio: number | null;
}

export class CsvError extends Error {}

function toNumber(field: string, value: string, line: number): number {
  const parsed = Number(value);
  if (value === "" || !Number.isFinite(parsed)) {
    throw new CsvError(`line ${line}: ${field} is not a number: ${JSON.stringify(value)}`);
  }
  return parsed;
}

function toOptional(field: string, value: string, line: number): number | null {
  return value === "" ? null : toNumber(field, value, line);
}

/** Parse harness CSV text into typed rows, validating the header. */
export function parseResultCsv(text: string): ResultRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.trim() !== "");
  if (lines.length === 0) {
    throw new CsvError("empty input");
  }
  const header = lines[0].split(",");
  const missing = REQUIRED_COLUMNS.filter((c) => !header.includes(c));
  if (missing.length > 0) {
    throw new CsvError(`missing columns: ${missing.join(", ")}`);
  }
  const index = new Map(header.map((name, i) => [name, i]));
  const rows: ResultRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const fields = lines[i].split(",");
    if (fields.length !== header.length) {
      throw new CsvError(`line ${i + 1}: expected ${header.length} fields, got ${fields.length}`);
    }
    const get = (name: string) => fields[index.get(name)!];
    rows.push({
      policy: get("policy"),
      k: toNumber("k", get("k"), i + 1),
      seed: toNumber("seed", get("seed"), i + 1),
      traceLen: toNumber("trace_len", get("trace_len"), i + 1),
      totalCost: toNumber("total_cost", get("total_cost"), i + 1),
      costPerRequest: toNumber("cost_per_request", get("cost_per_request"), i + 1),
      phases: toNumber("phases", get("phases"), i + 1),
      clean: toNumber("clean", get("clean"), i + 1),
      stale: toNumber("stale", get("stale"), i + 1),
      bypasses: toNumber("bypasses", get("bypasses"), i + 1),
      optCost: toOptional("opt_cost", get("opt_cost"), i + 1),
      ratio: toOptional("ratio", get("ratio"), i + 1),
    });
  }
  if (rows.length === 0) {
    throw new CsvError("no data rows");
  }
  return rows;
}
