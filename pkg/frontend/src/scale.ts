import { SpecError } from "./types.js";

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0;
  const f = ((value: number) =>
    span === 0 ? (r0 + r1) / 2 : r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  f.domain = domain;
  f.range = range;
  return f;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  if (!(d0 > 0) || !(d1 > 0)) {
    throw new SpecError(`log scale needs positive domain, got [${d0}, ${d1}]`);
  }
  const inner = linearScale([Math.log10(d0), Math.log10(d1)], range);
  const f = ((value: number) => inner(Math.log10(value))) as Scale;
  f.domain = domain;
  f.range = range;
  return f;
}

/** Decade tick positions covering [lo, hi]. */
export function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  const start = Math.floor(Math.log10(lo));
  const end = Math.ceil(Math.log10(hi));
  for (let e = start; e <= end; e++) {
    const value = Math.pow(10, e);
    if (value >= lo / 1.0001 && value <= hi * 1.0001) {
      ticks.push(value);
    }
  }
  if (ticks.length < 2) {
    return [lo, hi];
  }
  return ticks;
}

/** Round step linear ticks, at most ~6. */
export function linearTicks(lo: number, hi: number): number[] {
  if (lo === hi) return [lo];
  const span = hi - lo;
  const rawStep = span / 5;
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 5, 10].map((m) => m * power);
  const step = candidates.find((c) => span / c <= 6) ?? candidates[3];
  const ticks: number[] = [];
  let v = Math.ceil(lo / step) * step;
  for (; v <= hi + step * 1e-9; v += step) {
    ticks.push(Number(v.toPrecision(12)));
  }
  return ticks;
}

/** Pad a positive domain multiplicatively for log plots. */
export function padLog(lo: number, hi: number, factor = 1.3): [number, number] {
  return [lo / factor, hi * factor];
}
