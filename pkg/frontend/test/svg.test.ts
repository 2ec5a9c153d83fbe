import { describe, expect, it } from "vitest";

import type { Series } from "../src/aggregate.js";
import { renderFigure, RenderError } from "../src/svg.js";
import { invertX, invertY, parsePanels } from "./svgtools.js";

function series(policy: string, triples: [number, number, number][]): Series {
  return { policy, points: triples.map(([k, mean, std]) => ({ k, mean, std, count: 10 })) };
}

const TWO_SERIES = [
  series("alpha", [
    [16, 2.0, 0.1],
    [64, 1.5, 0.2],
    [256, 1.0, 0.05],
  ]),
  series("beta", [
    [16, 1.2, 0.0],
    [64, 0.8, 0.1],
    [256, 0.4, 0.02],
  ]),
];

describe("renderFigure", () => {
  it("lays out one panel per input with all series and a legend", () => {
    const svg = renderFigure([
      { title: "zipf", series: TWO_SERIES },
      { title: "geometric", series: TWO_SERIES },
    ]);
    expect(svg).toContain("<svg");
    const panels = parsePanels(svg);
    expect(panels.map((p) => p.title)).toEqual(["zipf", "geometric"]);
    expect(panels[0].series.map((s) => s.policy)).toEqual(["alpha", "beta"]);
    expect(svg.match(/<g class="legend"/g)).toHaveLength(1);
    expect(svg).toContain(">alpha</text>");
    expect(svg).toContain(">beta</text>");
  });

  it("plots points at positions that invert to the data", () => {
    const svg = renderFigure([{ title: "only", series: TWO_SERIES }]);
    const [panel] = parsePanels(svg);
    for (const [i, input] of TWO_SERIES.entries()) {
      const plotted = panel.series[i];
      expect(plotted.points).toHaveLength(input.points.length);
      for (const [j, p] of input.points.entries()) {
        expect(invertX(panel, plotted.points[j].cx)).toBeCloseTo(p.k, 9);
        expect(invertY(panel, plotted.points[j].cy)).toBeCloseTo(p.mean, 9);
      }
    }
  });

  it("stretches error bars one standard deviation each way", () => {
    const svg = renderFigure([{ title: "only", series: TWO_SERIES }]);
    const [panel] = parsePanels(svg);
    const plotted = panel.series[0];
    for (const [j, p] of TWO_SERIES[0].points.entries()) {
      const bar = plotted.errbars[j];
      const ends = [invertY(panel, bar.y1), invertY(panel, bar.y2)].sort((a, b) => a - b);
      expect(ends[0]).toBeCloseTo(p.mean - p.std, 9);
      expect(ends[1]).toBeCloseTo(p.mean + p.std, 9);
    }
  });

  it("renders a single point with a degenerate x-range at panel center", () => {
    const svg = renderFigure([{ title: "one", series: [series("a", [[8, 1.0, 0.2]])] }]);
    const [panel] = parsePanels(svg);
    expect(panel.series[0].points).toHaveLength(1);
    expect(panel.series[0].points[0].cx).toBeCloseTo((panel.x.lo + panel.x.hi) / 2, 9);
    expect(invertY(panel, panel.series[0].points[0].cy)).toBeCloseTo(1.0, 9);
  });

  it("rejects empty input", () => {
    expect(() => renderFigure([])).toThrow(RenderError);
    expect(() => renderFigure([{ title: "x", series: [] }])).toThrow(/no points/);
    expect(() => renderFigure([{ title: "x", series: [series("a", [[0, 1, 0]])] }])).toThrow(
      /non-positive cache size/,
    );
  });
});
