/**
 * Aggregation of harness rows into per-(policy, k) series.
 *
 * Each CSV holds several repetitions per (policy, k); a figure plots the
 * mean cost per request with the population standard deviation over
 * those repetitions as the error bar.
 */

import type { ResultRow } from "./csv.js";

export interface SeriesPoint {
  k: number;
  mean: number;
  std: number;
  count: number;
}

export interface Series {
  policy: string;
  points: SeriesPoint[]; // ascending k
}

function meanStd(values: number[]): { mean: number; std: number } {
  const mean = values.reduce((a, b) => a + b, 0) / values.length;
  const variance = values.reduce((a, b) => a + (b - mean) ** 2, 0) / values.length;
  return { mean, std: Math.sqrt(variance) };
}

/** Group rows by (policy, k) and reduce cost per request to mean/std. */
export function aggregate(rows: ResultRow[]): Series[] {
  const byPolicy = new Map<string, Map<number, number[]>>();
  for (const row of rows) {
    let ks = byPolicy.get(row.policy);
    if (!ks) {
      ks = new Map();
      byPolicy.set(row.policy, ks);
    }
    let values = ks.get(row.k);
    if (!values) {
      values = [];
      ks.set(row.k, values);
    }
    values.push(row.costPerRequest);
  }
  const series: Series[] = [];
  for (const policy of [...byPolicy.keys()].sort()) {
    const ks = byPolicy.get(policy)!;
    const points: SeriesPoint[] = [...ks.keys()]
      .sort((a, b) => a - b)
      .map((k) => {
        const values = ks.get(k)!;
        const { mean, std } = meanStd(values);
        return { k, mean, std, count: values.length };
      });
    series.push({ policy, points });
  }
  return series;
}
