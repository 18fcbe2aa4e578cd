#!/usr/bin/env node
/** Render figure bundles to SVG.
 *
 * Usage: holsim-render <manifest.json> [more manifests...] <outdir>
 *
 * Exits nonzero on any schema mismatch, naming the offending file and
 * column; input CSVs are never modified.
 */

import { pathToFileURL } from "node:url";

import { CsvError } from "./csv.js";
import { ManifestError } from "./manifest.js";
import { renderManifest } from "./render.js";

export function main(argv: string[]): number {
  if (argv.length < 2) {
    console.error("usage: holsim-render <manifest.json> [more manifests...] <outdir>");
    return 2;
  }
  const outdir = argv[argv.length - 1];
  const manifests = argv.slice(0, -1);
  for (const manifest of manifests) {
    try {
      const out = renderManifest(manifest, outdir);
      console.log(`${manifest} -> ${out}`);
    } catch (err) {
      if (err instanceof CsvError || err instanceof ManifestError) {
        console.error(`error: ${err.message}`);
        return 1;
      }
      console.error(`error: ${(err as Error).message}`);
      return 1;
    }
  }
  return 0;
}

if (process.argv[1] !== undefined &&
    import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
