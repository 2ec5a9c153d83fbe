/**
 * End-to-end figure pipeline: CSV text in, SVG text out.
 *
 * Each input CSV becomes one panel, titled after the file's base name
 * (`results/zipf.csv` -> "zipf"), with one series per policy found in
 * the file.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { basename, extname } from "node:path";

import { aggregate } from "./aggregate.js";
import { parseResultCsv } from "./csv.js";
import { renderFigure, type Panel } from "./svg.js";

export interface NamedCsv {
  title: string;
  text: string;
}

/** Build the figure for a list of named CSV payloads. */
export function buildFigure(inputs: NamedCsv[]): string {
  const panels: Panel[] = inputs.map(({ title, text }) => ({
    title,
    series: aggregate(parseResultCsv(text)),
  }));
  return renderFigure(panels);
}

export function titleFromPath(path: string): string {
  return basename(path, extname(path));
}

/** Read CSV files, render the figure, and write it to `outPath`. */
export function plotFiles(csvPaths: string[], outPath: string): void {
  const inputs = csvPaths.map((path) => ({
    title: titleFromPath(path),
    text: readFileSync(path, "utf8"),
  }));
  writeFileSync(outPath, buildFigure(inputs));
}
