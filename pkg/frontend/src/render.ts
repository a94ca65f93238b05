import { basename } from "node:path";

import { readResults, readSweep } from "./csv.js";
import { readReport } from "./report.js";
import { renderGapCurves } from "./figures/gapCurves.js";
import { renderHeatmap } from "./figures/heatmap.js";
import { renderScaling } from "./figures/scaling.js";
import { renderTteBars } from "./figures/tteBars.js";
import { FigureSpec, SpecError } from "./types.js";

export type FileReader = (path: string) => string;

/** Render a figure spec to an SVG string.  Rendering is pure: same inputs,
 * same bytes. */
export function render(spec: FigureSpec, readFile: FileReader): string {
  switch (spec.kind) {
    case "heatmap": {
      if (spec.inputs.length !== 1) {
        throw new SpecError("heatmap takes exactly one sweep CSV");
      }
      return renderHeatmap(readSweep(readFile(spec.inputs[0])), spec.threshold ?? 0.35, spec.title);
    }
    case "gap_curves": {
      const rows = spec.inputs.flatMap((p) => readResults(readFile(p)));
      return renderGapCurves(rows, spec.title);
    }
    case "scaling": {
      const reports = spec.inputs.map((p) => ({
        name: basename(p).replace(/\.json$/, ""),
        report: readReport(readFile(p)),
      }));
      return renderScaling(reports, spec.title);
    }
    case "tte_bars": {
      const reports = spec.inputs.map((p) => ({
        name: basename(p).replace(/\.json$/, ""),
        report: readReport(readFile(p)),
      }));
      return renderTteBars(reports, spec.title);
    }
  }
}
