export type FigureKind = "heatmap" | "gap_curves" | "scaling" | "tte_bars";

export interface FigureSpec {
  kind: FigureKind;
  /** Input CSV/JSON paths, schema depending on kind. */
  inputs: string[];
  /** Output SVG path. */
  output: string;
  /** Relative contour threshold for heatmaps (default 0.35). */
  threshold?: number;
  title?: string;
}

export class SpecError extends Error {}

const KINDS: FigureKind[] = ["heatmap", "gap_curves", "scaling", "tte_bars"];

export function parseSpec(raw: unknown): FigureSpec {
  if (typeof raw !== "object" || raw === null) {
    throw new SpecError("figure spec must be a JSON object");
  }
  const spec = raw as Record<string, unknown>;
  const kind = spec.kind;
  if (typeof kind !== "string" || !KINDS.includes(kind as FigureKind)) {
    throw new SpecError(`kind must be one of ${KINDS.join(", ")}`);
  }
  const inputs = spec.inputs;
  if (!Array.isArray(inputs) || inputs.length === 0 || !inputs.every((p) => typeof p === "string")) {
    throw new SpecError("inputs must be a non-empty array of paths");
  }
  if (typeof spec.output !== "string" || spec.output.length === 0) {
    throw new SpecError("output must be a path");
  }
  const threshold = spec.threshold === undefined ? 0.35 : spec.threshold;
  if (typeof threshold !== "number" || !(threshold > 0)) {
    throw new SpecError("threshold must be a positive number");
  }
  const title = spec.title === undefined ? undefined : String(spec.title);
  return { kind: kind as FigureKind, inputs: inputs as string[], output: spec.output, threshold, title };
}
