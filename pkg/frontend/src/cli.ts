/**
 * render --grid <csv> [--boundaries <json,...>] [--zoom1 j0,j1,g0,g1]
 *        [--zoom2 j0,j1,g0,g1] --out <svg>
 *
 * Renders the phase-diagram figure (main panel plus two zoom insets) from
 * phasekit scan/trace outputs into a static SVG.  Missing boundary files
 * are skipped with a warning; unknown phase labels abort.
 */

import { existsSync, readFileSync, writeFileSync } from "fs";
import { defaultZooms, renderPhaseDiagram } from "./chart.js";
import { parseGrid } from "./csv.js";
import { BoundaryFile, ZoomRect } from "./types.js";

function parseZoom(arg: string): ZoomRect {
  const v = arg.split(",").map(Number);
  if (v.length !== 4 || v.some((x) => !Number.isFinite(x))) {
    throw new Error(`bad zoom window "${arg}", want j0,j1,g0,g1`);
  }
  return { j0: v[0], j1: v[1], g0: v[2], g1: v[3] };
}

export function main(argv: string[]): number {
  const args = new Map<string, string>();
  const multi: string[] = [];
  for (let i = 0; i < argv.length; i++) {
    const a = argv[i];
    if (!a.startsWith("--")) {
      process.stderr.write(`unexpected argument: ${a}\n`);
      return 1;
    }
    const eq = a.indexOf("=");
    if (eq >= 0) {
      args.set(a.slice(2, eq), a.slice(eq + 1));
    } else {
      const key = a.slice(2);
      const val = argv[i + 1];
      if (val === undefined || val.startsWith("--")) {
        process.stderr.write(`missing value for --${key}\n`);
        return 1;
      }
      if (key === "boundaries" && args.has("boundaries")) {
        multi.push(val);
      } else {
        args.set(key, val);
      }
      i++;
    }
  }
  const gridPath = args.get("grid");
  const outPath = args.get("out");
  if (!gridPath || !outPath) {
    process.stderr.write("usage: render --grid <csv> [--boundaries <json,...>] " +
      "[--zoom1 j0,j1,g0,g1] [--zoom2 j0,j1,g0,g1] --out <svg>\n");
    return 1;
  }

  let parsed;
  try {
    parsed = parseGrid(readFileSync(gridPath, "utf-8"));
  } catch (err) {
    process.stderr.write(`${(err as Error).message}\n`);
    return 1;
  }
  if (parsed.skipped.length > 0) {
    process.stderr.write(`warning: skipped ${parsed.skipped.length} error-flagged rows\n`);
  }

  const boundaryArgs = [...(args.get("boundaries")?.split(",") ?? []), ...multi].filter(Boolean);
  const boundaries: BoundaryFile[] = [];
  for (const p of boundaryArgs) {
    if (!existsSync(p)) {
      process.stderr.write(`warning: boundary file ${p} not found, layer skipped\n`);
      continue;
    }
    boundaries.push(JSON.parse(readFileSync(p, "utf-8")) as BoundaryFile);
  }

  const zoom1 = args.has("zoom1") ? parseZoom(args.get("zoom1")!) : undefined;
  const zoom2 = args.has("zoom2") ? parseZoom(args.get("zoom2")!) : undefined;

  const svg = renderPhaseDiagram(parsed.rows, boundaries, zoom1, zoom2);
  writeFileSync(outPath, svg);
  process.stdout.write(`figure written to ${outPath}\n`);
  if (!args.has("zoom1") || !args.has("zoom2")) {
    const zd = defaultZooms(parsed.rows);
    const z1 = zoom1 ?? zd.zoom1;
    const z2 = zoom2 ?? zd.zoom2;
    process.stdout.write(
      `zooms: (b) ${z1.j0.toFixed(3)},${z1.j1.toFixed(3)},${z1.g0.toFixed(3)},${z1.g1.toFixed(3)}` +
      ` (c) ${z2.j0.toFixed(3)},${z2.j1.toFixed(3)},${z2.g0.toFixed(3)},${z2.g1.toFixed(3)}\n`,
    );
  }
  return 0;
}

const isDirect = process.argv[1] !== undefined &&
  import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (isDirect) {
  process.exit(main(process.argv.slice(2)));
}
