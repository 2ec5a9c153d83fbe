#!/usr/bin/env node
/**
 * Command line: plot --csv results/zipf.csv --csv results/geometric.csv --out fig.svg
 *
 * Each --csv becomes one panel (repeat the flag for multi-panel
 * figures); --out names the SVG file to write.
 */

import { CsvError } from "./csv.js";
import { plotFiles } from "./plot.js";
import { RenderError } from "./svg.js";

const USAGE = "usage: plot --csv <file> [--csv <file> ...] --out <file.svg>";

export function parseArgs(argv: string[]): { csvPaths: string[]; outPath: string } {
  const rest = argv[0] === "plot" ? argv.slice(1) : argv;
  const csvPaths: string[] = [];
  let outPath: string | null = null;
  for (let i = 0; i < rest.length; i++) {
    const arg = rest[i];
    if (arg === "--csv" || arg === "--out") {
      const value = rest[++i];
      if (value === undefined) {
        throw new Error(`${arg} needs a value\n${USAGE}`);
      }
      if (arg === "--csv") {
        csvPaths.push(value);
      } else {
        outPath = value;
      }
    } else {
      throw new Error(`unknown argument ${JSON.stringify(arg)}\n${USAGE}`);
    }
  }
  if (csvPaths.length === 0 || outPath === null) {
    throw new Error(USAGE);
  }
  return { csvPaths, outPath };
}

export function main(argv: string[]): number {
  try {
    const { csvPaths, outPath } = parseArgs(argv);
    plotFiles(csvPaths, outPath);
    console.log(`wrote ${outPath} (${csvPaths.length} panel${csvPaths.length > 1 ? "s" : ""})`);
    return 0;
  } catch (err) {
    if (err instanceof CsvError || err instanceof RenderError || err instanceof Error) {
      console.error(`error: ${err.message}`);
      return 2;
    }
    throw err;
  }
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("cli.js") || entry.endsWith("cli.ts")) {
  process.exit(main(process.argv.slice(2)));
}
