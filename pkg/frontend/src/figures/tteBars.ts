import { Report } from "../report.js";
import { logScale, padLog } from "../scale.js";
import { STYLE, fmtValue, svgDocument, tag, text } from "../svg.js";
import { SpecError } from "../types.js";
import { Frame, frameRect, yAxis } from "./axes.js";

const WIDTH = 640;
const HEIGHT = 480;
const FRAME: Frame = { x0: 80, y0: 40, x1: 600, y1: 400 };

/** Grouped time-to-epsilon bars per size; one group color per input report.
 * Infinite medians are drawn as hollow full-height bars labeled inf. */
export function renderTteBars(reports: Array<{ name: string; report: Report }>, title?: string): string {
  const sizes = reports[0].report.perSize.map((p) => p.size || String(p.n));
  for (const { name, report } of reports) {
    const these = report.perSize.map((p) => p.size || String(p.n));
    if (these.join("|") !== sizes.join("|")) {
      throw new SpecError(`report '${name}' has mismatched sizes: ${these.join(",")}`);
    }
  }
  const finite = reports.flatMap(({ report }) =>
    report.perSize.map((p) => p.tteMedian).filter((v) => Number.isFinite(v) && v > 0)
  );
  if (finite.length === 0) {
    throw new SpecError("all time-to-epsilon values are infinite; nothing to plot");
  }
  const yScale = logScale(padLog(Math.min(...finite), Math.max(...finite)), [FRAME.y1, FRAME.y0]);

  const children: string[] = [frameRect(FRAME)];
  children.push(...yAxis(FRAME, yScale, true, "median time-to-epsilon [s]"));

  const groupW = (FRAME.x1 - FRAME.x0) / sizes.length;
  const barW = (groupW * 0.8) / reports.length;
  sizes.forEach((size, sIdx) => {
    const groupX = FRAME.x0 + sIdx * groupW + groupW * 0.1;
    reports.forEach(({ report }, rIdx) => {
      const value = report.perSize[sIdx].tteMedian;
      const x = groupX + rIdx * barW;
      const color = STYLE.series[rIdx % STYLE.series.length];
      if (Number.isFinite(value) && value > 0) {
        const y = yScale(value);
        children.push(
          tag("rect", { x, y, width: barW * 0.9, height: FRAME.y1 - y, fill: color })
        );
      } else {
        children.push(
          tag("rect", {
            x,
            y: FRAME.y0,
            width: barW * 0.9,
            height: FRAME.y1 - FRAME.y0,
            fill: "none",
            stroke: color,
            "stroke-dasharray": "4,3",
          })
        );
        children.push(
          text(x + barW * 0.45, FRAME.y0 - 4, "inf", { anchor: "middle", size: 10, fill: color })
        );
      }
    });
    children.push(
      text(groupX + (groupW * 0.8) / 2, FRAME.y1 + 16, size, {
        anchor: "middle",
        size: 10,
      })
    );
  });

  reports.forEach(({ name }, rIdx) => {
    const color = STYLE.series[rIdx % STYLE.series.length];
    children.push(text(FRAME.x1 - 120, FRAME.y0 + 16 + 14 * rIdx, name, { fill: color, size: 12 }));
  });
  children.push(text((FRAME.x0 + FRAME.x1) / 2, FRAME.y1 + 32, "size", { anchor: "middle", size: 11 }));
  if (title) {
    children.push(text(WIDTH / 2, 22, title, { anchor: "middle", size: 14 }));
  }
  return svgDocument(WIDTH, HEIGHT, children);
}
