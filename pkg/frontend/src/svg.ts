/**
 * Static SVG rendering: one panel per distribution, mean cost per request
 * vs cache size, one line per policy, error bars of one standard
 * deviation.
 *
 * Coordinates are emitted at full double precision and every panel group
 * carries its scale window as data attributes, so a reader (or a test)
 * can invert pixel positions back to data values exactly.
 */

import type { Series } from "./aggregate.js";

export interface Panel {
  title: string;
  series: Series[];
}

export class RenderError extends Error {}

const PANEL_WIDTH = 380;
const PANEL_HEIGHT = 320;
const MARGIN = { top: 48, right: 24, bottom: 52, left: 64 };
const PALETTE = ["#4e79a7", "#e15759", "#59a14f", "#f28e2b", "#b07aa1", "#76b7b2"];

interface Scale {
  min: number;
  max: number;
  lo: number; // pixel at min
  hi: number; // pixel at max
}

function place(scale: Scale, value: number): number {
  if (scale.max === scale.min) {
    return (scale.lo + scale.hi) / 2;
  }
  return scale.lo + ((value - scale.min) / (scale.max - scale.min)) * (scale.hi - scale.lo);
}

function niceTicks(min: number, max: number, target = 5): number[] {
  if (max === min) {
    return [min];
  }
  const rawStep = (max - min) / target;
  const magnitude = 10 ** Math.floor(Math.log10(rawStep));
  const residual = rawStep / magnitude;
  const step = (residual >= 5 ? 5 : residual >= 2 ? 2 : 1) * magnitude;
  const ticks: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

function formatTick(value: number): string {
  return Math.abs(value) >= 100 || Number.isInteger(value)
    ? String(value)
    : value.toPrecision(3);
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function panelScales(panel: Panel): { x: Scale; y: Scale } {
  const points = panel.series.flatMap((s) => s.points);
  if (points.length === 0) {
    throw new RenderError(`panel ${JSON.stringify(panel.title)} has no points`);
  }
  const logKs = points.map((p) => {
    if (p.k <= 0) {
      throw new RenderError(`non-positive cache size ${p.k}`);
    }
    return Math.log2(p.k);
  });
  const los = points.map((p) => p.mean - p.std);
  const his = points.map((p) => p.mean + p.std);
  let yMin = Math.min(...los);
  let yMax = Math.max(...his);
  if (yMin === yMax) {
    yMin -= 0.5;
    yMax += 0.5;
  }
  const pad = 0.05 * (yMax - yMin);
  return {
    x: {
      min: Math.min(...logKs),
      max: Math.max(...logKs),
      lo: MARGIN.left,
      hi: PANEL_WIDTH - MARGIN.right,
    },
    y: { min: yMin - pad, max: yMax + pad, lo: PANEL_HEIGHT - MARGIN.bottom, hi: MARGIN.top },
  };
}

function renderPanel(panel: Panel, offsetX: number, colorOf: Map<string, string>): string {
  const { x, y } = panelScales(panel);
  const parts: string[] = [];
  parts.push(
    `<g class="panel" transform="translate(${offsetX},0)" ` +
      `data-title="${escapeXml(panel.title)}" ` +
      `data-x-scale="log2" data-x-min="${x.min}" data-x-max="${x.max}" ` +
      `data-x-lo="${x.lo}" data-x-hi="${x.hi}" ` +
      `data-y-min="${y.min}" data-y-max="${y.max}" ` +
      `data-y-lo="${y.lo}" data-y-hi="${y.hi}">`,
  );
  parts.push(
    `<text class="title" x="${(x.lo + x.hi) / 2}" y="${MARGIN.top - 22}" ` +
      `text-anchor="middle" font-size="13" font-weight="bold">${escapeXml(panel.title)}</text>`,
  );

  // frame and grid
  parts.push(
    `<rect class="frame" x="${x.lo}" y="${y.hi}" width="${x.hi - x.lo}" ` +
      `height="${y.lo - y.hi}" fill="none" stroke="#333" stroke-width="1"/>`,
  );
  for (const tick of niceTicks(y.min, y.max)) {
    const py = place(y, tick);
    parts.push(
      `<line class="grid" x1="${x.lo}" x2="${x.hi}" y1="${py}" y2="${py}" ` +
        `stroke="#ddd" stroke-width="0.5"/>`,
      `<text class="ytick" data-value="${tick}" x="${x.lo - 6}" y="${py}" ` +
        `text-anchor="end" dominant-baseline="middle" font-size="10">${formatTick(tick)}</text>`,
    );
  }
  const ks = [...new Set(panel.series.flatMap((s) => s.points.map((p) => p.k)))].sort(
    (a, b) => a - b,
  );
  for (const k of ks) {
    const px = place(x, Math.log2(k));
    parts.push(
      `<line class="xtick-mark" x1="${px}" x2="${px}" y1="${y.lo}" y2="${y.lo + 4}" ` +
        `stroke="#333" stroke-width="1"/>`,
      `<text class="xtick" data-value="${k}" x="${px}" y="${y.lo + 16}" ` +
        `text-anchor="middle" font-size="10">${k}</text>`,
    );
  }
  parts.push(
    `<text class="xlabel" x="${(x.lo + x.hi) / 2}" y="${PANEL_HEIGHT - 14}" ` +
      `text-anchor="middle" font-size="11">cache size k</text>`,
    `<text class="ylabel" x="${x.lo - 46}" y="${(y.lo + y.hi) / 2}" text-anchor="middle" ` +
      `font-size="11" transform="rotate(-90 ${x.lo - 46} ${(y.lo + y.hi) / 2})">` +
      `mean cost per request</text>`,
  );

  for (const series of panel.series) {
    const color = colorOf.get(series.policy)!;
    const pts = series.points.map((p) => ({
      px: place(x, Math.log2(p.k)),
      py: place(y, p.mean),
      ...p,
    }));
    parts.push(`<g class="series" data-policy="${escapeXml(series.policy)}">`);
    const d = pts.map((p, i) => `${i === 0 ? "M" : "L"}${p.px} ${p.py}`).join(" ");
    parts.push(
      `<path class="mean-line" d="${d}" fill="none" stroke="${color}" stroke-width="1.5"/>`,
    );
    for (const p of pts) {
      const yLo = place(y, p.mean - p.std);
      const yHi = place(y, p.mean + p.std);
      parts.push(
        `<line class="errbar" x1="${p.px}" x2="${p.px}" y1="${yLo}" y2="${yHi}" ` +
          `stroke="${color}" stroke-width="1"/>`,
        `<line class="errcap" x1="${p.px - 3}" x2="${p.px + 3}" y1="${yLo}" y2="${yLo}" ` +
          `stroke="${color}" stroke-width="1"/>`,
        `<line class="errcap" x1="${p.px - 3}" x2="${p.px + 3}" y1="${yHi}" y2="${yHi}" ` +
          `stroke="${color}" stroke-width="1"/>`,
        `<circle class="pt" data-k="${p.k}" cx="${p.px}" cy="${p.py}" r="3" fill="${color}"/>`,
      );
    }
    parts.push("</g>");
  }
  parts.push("</g>");
  return parts.join("\n");
}

/** Render panels side by side into a standalone SVG document. */
export function renderFigure(panels: Panel[]): string {
  if (panels.length === 0) {
    throw new RenderError("no panels to render");
  }
  const policies = [...new Set(panels.flatMap((p) => p.series.map((s) => s.policy)))].sort();
  const colorOf = new Map(policies.map((p, i) => [p, PALETTE[i % PALETTE.length]]));
  const width = PANEL_WIDTH * panels.length;
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${PANEL_HEIGHT}" ` +
      `viewBox="0 0 ${width} ${PANEL_HEIGHT}" font-family="sans-serif">`,
    `<rect width="${width}" height="${PANEL_HEIGHT}" fill="white"/>`,
  ];
  panels.forEach((panel, i) => parts.push(renderPanel(panel, i * PANEL_WIDTH, colorOf)));

  // one legend for the whole figure
  const legendX = width - MARGIN.right - 150;
  parts.push(`<g class="legend" transform="translate(${legendX},${MARGIN.top - 36})">`);
  policies.forEach((policy, i) => {
    const ly = i * 14;
    parts.push(
      `<line x1="0" x2="18" y1="${ly}" y2="${ly}" stroke="${colorOf.get(policy)}" stroke-width="2"/>`,
      `<text x="24" y="${ly}" dominant-baseline="middle" font-size="10">${escapeXml(policy)}</text>`,
    );
  });
  parts.push("</g>", "</svg>");
  return parts.join("\n") + "\n";
}
