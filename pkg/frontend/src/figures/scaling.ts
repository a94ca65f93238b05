import { Report } from "../report.js";
import { logScale, padLog } from "../scale.js";
import { STYLE, fmt, svgDocument, tag, text, polyline } from "../svg.js";
import { SpecError } from "../types.js";
import { Frame, frameRect, xAxis, yAxis } from "./axes.js";

const WIDTH = 640;
const HEIGHT = 480;
const FRAME: Frame = { x0: 80, y0: 40, x1: 600, y1: 400 };

/** Log-log time-to-epsilon scaling with the fitted power law.
 *
 * The exponent is read from the report, never re-fit here.  Each input
 * report becomes one series; infinite medians are excluded from the plot and
 * each series needs at least 3 finite points (the fit contract).
 */
export function renderScaling(reports: Array<{ name: string; report: Report }>, title?: string): string {
  const seriesPoints = reports.map(({ name, report }) => {
    const pts = report.perSize
      .filter((p) => Number.isFinite(p.tteMedian) && p.tteMedian > 0)
      .map((p) => ({ n: p.n, tte: p.tteMedian }))
      .sort((a, b) => a.n - b.n);
    if (pts.length < 3) {
      throw new SpecError(
        `scaling input '${name}' has ${pts.length} finite points; need at least 3`
      );
    }
    return { name, pts, fit: report.fit };
  });

  const all = seriesPoints.flatMap((s) => s.pts);
  const xDomain = padLog(Math.min(...all.map((p) => p.n)), Math.max(...all.map((p) => p.n)), 1.2);
  const yDomain = padLog(Math.min(...all.map((p) => p.tte)), Math.max(...all.map((p) => p.tte)));
  const xScale = logScale(xDomain, [FRAME.x0, FRAME.x1]);
  const yScale = logScale(yDomain, [FRAME.y1, FRAME.y0]);

  const children: string[] = [frameRect(FRAME)];
  children.push(...xAxis(FRAME, xScale, true, "problem size N"));
  children.push(...yAxis(FRAME, yScale, true, "median time-to-epsilon [s]"));

  seriesPoints.forEach((s, idx) => {
    const color = STYLE.series[idx % STYLE.series.length];
    for (const p of s.pts) {
      children.push(
        tag("circle", { cx: xScale(p.n), cy: yScale(p.tte), r: 4, fill: color })
      );
    }
    if (s.fit) {
      // tte = exp(intercept) * N^gamma, drawn over the data range
      const nLo = s.pts[0].n;
      const nHi = s.pts[s.pts.length - 1].n;
      const line: Array<[number, number]> = [];
      const steps = 32;
      for (let i = 0; i <= steps; i++) {
        const n = nLo * Math.pow(nHi / nLo, i / steps);
        const tte = Math.exp(s.fit.intercept) * Math.pow(n, s.fit.gamma);
        if (tte >= yDomain[0] && tte <= yDomain[1]) {
          line.push([xScale(n), yScale(tte)]);
        }
      }
      if (line.length >= 2) {
        children.push(polyline(line, color, 1.2, "5,3"));
      }
      children.push(
        text(FRAME.x0 + 14, FRAME.y0 + 18 + 16 * idx,
          `${s.name}: gamma = ${fmt(s.fit.gamma, 2)}`,
          { fill: color, size: 12 })
      );
    } else {
      children.push(
        text(FRAME.x0 + 14, FRAME.y0 + 18 + 16 * idx, `${s.name}: no fit`, {
          fill: color,
          size: 12,
        })
      );
    }
  });

  if (title) {
    children.push(text(WIDTH / 2, 22, title, { anchor: "middle", size: 14 }));
  }
  return svgDocument(WIDTH, HEIGHT, children);
}
