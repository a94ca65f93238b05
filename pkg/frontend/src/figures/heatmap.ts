import { colormap } from "../color.js";
import { SweepCell } from "../csv.js";
import { contourSegments } from "../marching.js";
import { STYLE, fmt, fmtValue, svgDocument, tag, text } from "../svg.js";
import { SpecError } from "../types.js";

const WIDTH = 640;
const HEIGHT = 480;
const MARGIN = { left: 70, right: 110, top: 40, bottom: 55 };

/** Gap heatmap over the (alpha, beta) plane with a relative-threshold contour.
 *
 * The contour marks gap = best + threshold * |best|; a constant field has no
 * contour by construction.
 */
export function renderHeatmap(cells: SweepCell[], threshold: number, title?: string): string {
  const alphas = [...new Set(cells.map((c) => c.alpha))].sort((a, b) => a - b);
  const betas = [...new Set(cells.map((c) => c.beta))].sort((a, b) => a - b);
  const byKey = new Map<string, number>();
  for (const cell of cells) {
    byKey.set(`${cell.alpha}|${cell.beta}`, cell.gap);
  }
  if (byKey.size !== alphas.length * betas.length) {
    throw new SpecError(
      `sweep grid is incomplete: ${byKey.size} cells for ` +
        `${alphas.length} alpha x ${betas.length} beta values`
    );
  }
  const grid = alphas.map((a) =>
    betas.map((b) => byKey.get(`${a}|${b}`)!)
  );
  const flat = grid.flat();
  const lo = Math.min(...flat);
  const hi = Math.max(...flat);
  const span = hi - lo;

  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const cellW = plotW / betas.length;
  const cellH = plotH / alphas.length;
  const children: string[] = [];

  for (let r = 0; r < alphas.length; r++) {
    for (let c = 0; c < betas.length; c++) {
      const t = span === 0 ? 0.5 : (grid[r][c] - lo) / span;
      children.push(
        tag("rect", {
          x: MARGIN.left + c * cellW,
          // alpha increases upward
          y: MARGIN.top + (alphas.length - 1 - r) * cellH,
          width: cellW,
          height: cellH,
          fill: colormap(t),
        })
      );
    }
  }

  // contour at the relative threshold over the best (lowest) gap
  const level = lo + threshold * Math.abs(lo);
  if (span > 0 && level > lo && level < hi) {
    // grid coordinates are cell centers
    const toX = (gx: number) => MARGIN.left + (gx + 0.5) * cellW;
    const toY = (gy: number) => MARGIN.top + (alphas.length - 1 - gy + 0.5) * cellH;
    for (const [[x1, y1], [x2, y2]] of contourSegments(grid, level)) {
      children.push(
        tag("line", {
          x1: toX(x1),
          y1: toY(y1),
          x2: toX(x2),
          y2: toY(y2),
          stroke: STYLE.contour,
          "stroke-width": 2,
        })
      );
    }
  }

  // axes labels: beta along x, alpha along y
  betas.forEach((b, c) => {
    children.push(
      text(MARGIN.left + (c + 0.5) * cellW, HEIGHT - MARGIN.bottom + 16, fmtValue(b), {
        anchor: "middle",
      })
    );
  });
  alphas.forEach((a, r) => {
    children.push(
      text(MARGIN.left - 8, MARGIN.top + (alphas.length - 1 - r + 0.5) * cellH + 4, fmtValue(a), {
        anchor: "end",
      })
    );
  });
  children.push(
    text(MARGIN.left + plotW / 2, HEIGHT - 12, "beta", { anchor: "middle", size: 13 })
  );
  children.push(
    text(18, MARGIN.top + plotH / 2, "alpha", { anchor: "middle", size: 13, rotate: -90 })
  );
  if (title) {
    children.push(text(WIDTH / 2, 22, title, { anchor: "middle", size: 14 }));
  }

  // colorbar
  const barX = WIDTH - MARGIN.right + 30;
  const barH = plotH;
  const steps = 32;
  for (let i = 0; i < steps; i++) {
    children.push(
      tag("rect", {
        x: barX,
        y: MARGIN.top + barH - ((i + 1) * barH) / steps,
        width: 16,
        height: barH / steps + 0.5,
        fill: colormap(i / (steps - 1)),
      })
    );
  }
  children.push(text(barX + 22, MARGIN.top + barH, fmtValue(lo), { size: 10 }));
  children.push(text(barX + 22, MARGIN.top + 8, fmtValue(hi), { size: 10 }));
  children.push(text(barX + 8, MARGIN.top - 8, "gap", { anchor: "middle", size: 11 }));

  return svgDocument(WIDTH, HEIGHT, children);
}
