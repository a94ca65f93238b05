import { ResultRow } from "../csv.js";
import { linearScale, logScale, padLog } from "../scale.js";
import { STYLE, svgDocument, tag, text, polyline } from "../svg.js";
import { SpecError } from "../types.js";
import { Frame, frameRect, xAxis, yAxis } from "./axes.js";

const WIDTH = 640;
const HEIGHT = 480;
const FRAME: Frame = { x0: 75, y0: 40, x1: 600, y1: 400 };

interface SeriesPoint {
  nSteps: number;
  gap: number;
  runtime: number;
}

/** Mean gap versus step count per solver (log x), with a runtime inset. */
export function renderGapCurves(rows: ResultRow[], title?: string): string {
  const bySolver = new Map<string, Map<number, { gaps: number[]; runtimes: number[] }>>();
  for (const row of rows) {
    const steps = bySolver.get(row.solver) ?? new Map();
    bySolver.set(row.solver, steps);
    const cell = steps.get(row.nSteps) ?? { gaps: [], runtimes: [] };
    steps.set(row.nSteps, cell);
    cell.gaps.push(row.gap);
    cell.runtimes.push(row.runtimeS);
  }
  const solvers = [...bySolver.keys()].sort();
  const series = new Map<string, SeriesPoint[]>();
  for (const solver of solvers) {
    const points: SeriesPoint[] = [...bySolver.get(solver)!.entries()]
      .sort((a, b) => a[0] - b[0])
      .map(([nSteps, cell]) => ({
        nSteps,
        gap: cell.gaps.reduce((s, v) => s + v, 0) / cell.gaps.length,
        runtime: cell.runtimes.reduce((s, v) => s + v, 0) / cell.runtimes.length,
      }));
    series.set(solver, points);
  }

  const allPoints = [...series.values()].flat();
  if (allPoints.length === 0) {
    throw new SpecError("no data points after aggregation");
  }
  const stepVals = allPoints.map((p) => p.nSteps);
  const gapVals = allPoints.map((p) => p.gap);
  const xDomain = padLog(Math.min(...stepVals), Math.max(...stepVals), 1.15);
  const xScale = logScale(xDomain, [FRAME.x0, FRAME.x1]);
  // gaps can be exactly 0 (reference reached); use a linear axis then
  const logY = gapVals.every((g) => g > 0);
  const yLo = Math.min(...gapVals);
  const yHi = Math.max(...gapVals);
  const yScale = logY
    ? logScale(padLog(yLo, yHi), [FRAME.y1, FRAME.y0])
    : linearScale([Math.min(0, yLo), yHi === yLo ? yHi + 1 : yHi * 1.05], [FRAME.y1, FRAME.y0]);

  const children: string[] = [frameRect(FRAME)];
  children.push(...xAxis(FRAME, xScale, true, "steps"));
  children.push(...yAxis(FRAME, yScale, logY, "mean gap"));

  solvers.forEach((solver, idx) => {
    const color = STYLE.series[idx % STYLE.series.length];
    const pts = series.get(solver)!;
    children.push(
      polyline(pts.map((p) => [xScale(p.nSteps), yScale(p.gap)] as [number, number]), color)
    );
    for (const p of pts) {
      children.push(
        tag("circle", { cx: xScale(p.nSteps), cy: yScale(p.gap), r: 3, fill: color })
      );
    }
    children.push(
      text(FRAME.x1 - 90, FRAME.y0 + 16 + 14 * idx, solver, { fill: color, size: 12 })
    );
  });

  // runtime inset (log-log), bottom-left corner of the main frame
  const inset: Frame = { x0: FRAME.x0 + 40, y0: FRAME.y1 - 130, x1: FRAME.x0 + 200, y1: FRAME.y1 - 30 };
  const runtimeVals = allPoints.map((p) => p.runtime).filter((v) => v > 0);
  if (runtimeVals.length > 0) {
    const rScale = logScale(
      padLog(Math.min(...runtimeVals), Math.max(...runtimeVals)),
      [inset.y1, inset.y0]
    );
    children.push(
      tag("rect", {
        x: inset.x0,
        y: inset.y0,
        width: inset.x1 - inset.x0,
        height: inset.y1 - inset.y0,
        fill: "#ffffff",
        stroke: STYLE.axis,
        "stroke-width": 0.7,
      })
    );
    const ixScale = logScale(xDomain, [inset.x0, inset.x1]);
    solvers.forEach((solver, idx) => {
      const color = STYLE.series[idx % STYLE.series.length];
      const pts = series
        .get(solver)!
        .filter((p) => p.runtime > 0)
        .map((p) => [ixScale(p.nSteps), rScale(p.runtime)] as [number, number]);
      if (pts.length > 0) {
        children.push(polyline(pts, color, 1.0));
      }
    });
    children.push(text(inset.x0 + 4, inset.y0 + 12, "runtime [s]", { size: 9 }));
  }

  if (title) {
    children.push(text(WIDTH / 2, 22, title, { anchor: "middle", size: 14 }));
  }
  return svgDocument(WIDTH, HEIGHT, children);
}
