import { Scale, linearTicks, logTicks } from "../scale.js";
import { STYLE, fmtValue, tag, text } from "../svg.js";

export interface Frame {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

export function frameRect(f: Frame): string {
  return tag("rect", {
    x: f.x0,
    y: f.y0,
    width: f.x1 - f.x0,
    height: f.y1 - f.y0,
    fill: "none",
    stroke: STYLE.axis,
    "stroke-width": 1,
  });
}

export function xAxis(f: Frame, scale: Scale, log: boolean, label: string, size = 11): string[] {
  const [lo, hi] = scale.domain;
  const ticks = log ? logTicks(lo, hi) : linearTicks(lo, hi);
  const parts: string[] = [];
  for (const t of ticks) {
    const x = scale(t);
    parts.push(
      tag("line", { x1: x, y1: f.y1, x2: x, y2: f.y1 + 4, stroke: STYLE.axis, "stroke-width": 1 })
    );
    parts.push(text(x, f.y1 + 16, fmtValue(t), { anchor: "middle", size: size - 1 }));
  }
  parts.push(text((f.x0 + f.x1) / 2, f.y1 + 32, label, { anchor: "middle", size }));
  return parts;
}

export function yAxis(f: Frame, scale: Scale, log: boolean, label: string, size = 11): string[] {
  const [lo, hi] = scale.domain;
  const ticks = log ? logTicks(lo, hi) : linearTicks(lo, hi);
  const parts: string[] = [];
  for (const t of ticks) {
    const y = scale(t);
    parts.push(
      tag("line", { x1: f.x0 - 4, y1: y, x2: f.x0, y2: y, stroke: STYLE.axis, "stroke-width": 1 })
    );
    parts.push(text(f.x0 - 7, y + 3, fmtValue(t), { anchor: "end", size: size - 1 }));
  }
  parts.push(
    text(f.x0 - 48, (f.y0 + f.y1) / 2, label, { anchor: "middle", size, rotate: -90 })
  );
  return parts;
}
