import { SpecError } from "./types.js";

export interface SizePoint {
  size: string;
  n: number;
  tteMedian: number;
  nStepsOpt: number;
}

export interface Report {
  epsilon: number;
  pTarget: number;
  perSize: SizePoint[];
  fit: { gamma: number; intercept: number } | null;
}

function asFinite(value: unknown, what: string): number {
  // infinite medians serialize as the string "inf"
  if (value === "inf") return Infinity;
  if (value === "-inf") return -Infinity;
  if (typeof value !== "number" || Number.isNaN(value)) {
    throw new SpecError(`${what}: expected a number, got ${JSON.stringify(value)}`);
  }
  return value;
}

export function readReport(text: string): Report {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (err) {
    throw new SpecError(`report is not valid JSON: ${(err as Error).message}`);
  }
  const obj = raw as Record<string, unknown>;
  if (!Array.isArray(obj.per_size)) {
    throw new SpecError("report: missing per_size array");
  }
  const perSize: SizePoint[] = obj.per_size.map((entry) => {
    const e = entry as Record<string, unknown>;
    return {
      size: String(e.size ?? ""),
      n: asFinite(e.n, "per_size.n"),
      tteMedian: asFinite(e.tte_median, "per_size.tte_median"),
      nStepsOpt: asFinite(e.n_steps_opt, "per_size.n_steps_opt"),
    };
  });
  let fit: Report["fit"] = null;
  if (obj.fit !== null && obj.fit !== undefined) {
    const f = obj.fit as Record<string, unknown>;
    fit = {
      gamma: asFinite(f.gamma, "fit.gamma"),
      intercept: asFinite(f.intercept, "fit.intercept"),
    };
  }
  return {
    epsilon: asFinite(obj.epsilon ?? 0, "epsilon"),
    pTarget: asFinite(obj.p_target ?? 0.99, "p_target"),
    perSize,
    fit,
  };
}
