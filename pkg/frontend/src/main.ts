#!/usr/bin/env node
/** figures <spec.json> [more specs...] — render benchmark outputs to SVG. */

import { readFileSync, writeFileSync } from "node:fs";

import { render } from "./render.js";
import { SpecError, parseSpec } from "./types.js";

export function runOne(specPath: string): string {
  const spec = parseSpec(JSON.parse(readFileSync(specPath, "utf-8")));
  const svg = render(spec, (p) => readFileSync(p, "utf-8"));
  writeFileSync(spec.output, svg);
  return spec.output;
}

export function main(argv: string[]): number {
  if (argv.length === 0) {
    process.stderr.write("usage: figures <spec.json> [more specs...]\n");
    return 2;
  }
  for (const specPath of argv) {
    try {
      const output = runOne(specPath);
      process.stdout.write(`${output}\n`);
    } catch (err) {
      if (err instanceof SpecError) {
        process.stderr.write(`error: ${specPath}: ${err.message}\n`);
        return 1;
      }
      if (err instanceof SyntaxError || (err as NodeJS.ErrnoException).code === "ENOENT") {
        process.stderr.write(`error: ${specPath}: ${(err as Error).message}\n`);
        return 1;
      }
      throw err;
    }
  }
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith("main.js")) {
  process.exit(main(process.argv.slice(2)));
}
