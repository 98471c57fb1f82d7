import { fmt, line, polyline, rect, tag, text } from "./svg.js";
import {
  BoundaryFile,
  BoundaryPoint,
  LABEL_COLORS,
  PHASE_LABELS,
  PhaseLabel,
  ScanRow,
  ZoomRect,
} from "./types.js";

interface Panel {
  x: number;
  y: number;
  w: number;
  h: number;
  jMin: number;
  jMax: number;
  gMin: number;
  gMax: number;
}

function sx(p: Panel, j: number): number {
  return p.jMax === p.jMin ? p.x + p.w / 2 : p.x + ((j - p.jMin) / (p.jMax - p.jMin)) * p.w;
}

function sy(p: Panel, g: number): number {
  return p.gMax === p.gMin ? p.y + p.h / 2 : p.y + p.h - ((g - p.gMin) / (p.gMax - p.gMin)) * p.h;
}

function gridSteps(values: number[]): number {
  const uniq = [...new Set(values)].sort((a, b) => a - b);
  if (uniq.length < 2) return 1.0;
  let step = Infinity;
  for (let i = 1; i < uniq.length; i++) step = Math.min(step, uniq[i] - uniq[i - 1]);
  return step;
}

function cells(panel: Panel, rows: ScanRow[]): string {
  const dj = gridSteps(rows.map((r) => r.j));
  const dg = gridSteps(rows.map((r) => r.g));
  const parts: string[] = [];
  for (const r of rows) {
    if (r.j + dj / 2 < panel.jMin || r.j - dj / 2 > panel.jMax) continue;
    if (r.g + dg / 2 < panel.gMin || r.g - dg / 2 > panel.gMax) continue;
    const x0 = sx(panel, Math.max(r.j - dj / 2, panel.jMin));
    const x1 = sx(panel, Math.min(r.j + dj / 2, panel.jMax));
    const y0 = sy(panel, Math.min(r.g + dg / 2, panel.gMax));
    const y1 = sy(panel, Math.max(r.g - dg / 2, panel.gMin));
    parts.push(rect(x0, y0, x1 - x0, y1 - y0, LABEL_COLORS[r.label as PhaseLabel]));
  }
  return parts.join("");
}

function boundaryLayers(panel: Panel, files: BoundaryFile[]): string {
  const parts: string[] = [];
  for (const f of files) {
    if (f.method === "mean-field") {
      const branches = new Map<string, BoundaryPoint[]>();
      for (const pt of f.points) {
        const arr = branches.get(pt.branch) ?? [];
        arr.push(pt);
        branches.set(pt.branch, arr);
      }
      for (const [, pts] of [...branches.entries()].sort()) {
        pts.sort((a, b) => a.j - b.j);
        // split into solid and faded segments (fading marks deviation)
        for (let i = 1; i < pts.length; i++) {
          const a = pts[i - 1];
          const b = pts[i];
          const faded = a.deviates || b.deviates;
          parts.push(
            polyline(
              [
                [sx(panel, a.j), sy(panel, a.g_c)],
                [sx(panel, b.j), sy(panel, b.g_c)],
              ],
              { stroke: "#000000", "stroke-width": 1.6, opacity: faded ? 0.3 : 1.0 },
            ),
          );
        }
        if (pts.length === 1) {
          const a = pts[0];
          parts.push(
            tag("circle", {
              cx: sx(panel, a.j), cy: sy(panel, a.g_c), r: 2,
              fill: "#000000", opacity: a.deviates ? 0.3 : 1.0,
            }),
          );
        }
      }
    } else {
      for (const pt of f.points) {
        const x = sx(panel, pt.j);
        const y = sy(panel, pt.g_c);
        const s = pt.order === "first" ? 4 : 3;
        const style = { stroke: "#111111", "stroke-width": pt.order === "first" ? 1.8 : 1.2 };
        parts.push(line(x - s, y - s, x + s, y + s, style));
        parts.push(line(x - s, y + s, x + s, y - s, style));
      }
    }
  }
  return parts.join("");
}

function axes(panel: Panel, title: string, clipId: string): { frame: string; clip: string } {
  const frame =
    rect(panel.x, panel.y, panel.w, panel.h, "none", { stroke: "#333333", "stroke-width": 1 }) +
    text(panel.x + panel.w / 2, panel.y + panel.h + 26, "J", { "text-anchor": "middle", "font-size": 12 }) +
    text(panel.x - 30, panel.y + panel.h / 2, "g", { "text-anchor": "middle", "font-size": 12 }) +
    text(panel.x + 4, panel.y + 14, title, { "font-size": 12, "font-weight": "bold" }) +
    [panel.jMin, panel.jMax]
      .map((j, i) =>
        text(sx(panel, j), panel.y + panel.h + 12, fmt(j), {
          "text-anchor": i === 0 ? "start" : "end",
          "font-size": 9,
        }),
      )
      .join("") +
    [panel.gMin, panel.gMax]
      .map((g) =>
        text(panel.x - 4, sy(panel, g) + 3, fmt(g), { "text-anchor": "end", "font-size": 9 }),
      )
      .join("");
  const clip = tag(
    "clipPath",
    { id: clipId },
    rect(panel.x, panel.y, panel.w, panel.h, "#ffffff"),
  );
  return { frame, clip };
}

function legend(x: number, y: number, labels: string[]): string {
  const parts: string[] = [text(x, y - 8, "phases:", { "font-size": 11 })];
  labels.forEach((lab, i) => {
    const yy = y + i * 20;
    parts.push(rect(x, yy, 14, 14, LABEL_COLORS[lab as PhaseLabel], { stroke: "#333333", "stroke-width": 0.5 }));
    parts.push(text(x + 20, yy + 11, lab, { "font-size": 11, class: `legend-${lab}` }));
  });
  return parts.join("");
}

function dataBounds(rows: ScanRow[]): { jMin: number; jMax: number; gMin: number; gMax: number } {
  return {
    jMin: Math.min(...rows.map((r) => r.j)),
    jMax: Math.max(...rows.map((r) => r.j)),
    gMin: Math.min(...rows.map((r) => r.g)),
    gMax: Math.max(...rows.map((r) => r.g)),
  };
}

/** Default zoom windows: the AFM-S region and the steepest boundary region. */
export function defaultZooms(rows: ScanRow[]): { zoom1: ZoomRect; zoom2: ZoomRect } {
  const b = dataBounds(rows);
  const afms = rows.filter((r) => r.label === "AFM-S");
  const zoom1: ZoomRect =
    afms.length > 0
      ? {
          j0: Math.min(...afms.map((r) => r.j)) - 0.05,
          j1: Math.max(...afms.map((r) => r.j)) + 0.05,
          g0: Math.min(...afms.map((r) => r.g)) - 0.05,
          g1: Math.max(...afms.map((r) => r.g)) + 0.05,
        }
      : { j0: b.jMin, j1: b.jMin + 0.4 * (b.jMax - b.jMin), g0: b.gMin, g1: b.gMax };
  const zoom2: ZoomRect = {
    j0: Math.max(b.jMin, 0.25),
    j1: Math.min(b.jMax, 0.65),
    g0: 0.6 * (b.gMin + b.gMax) - 0.15,
    g1: Math.min(b.gMax, 0.6 * (b.gMin + b.gMax) + 0.25),
  };
  return { zoom1, zoom2 };
}

export function renderPhaseDiagram(
  rows: ScanRow[],
  boundaries: BoundaryFile[],
  zoom1?: ZoomRect,
  zoom2?: ZoomRect,
): string {
  const W = 960;
  const H = 640;
  const b = dataBounds(rows);
  const zd = defaultZooms(rows);
  const z1 = zoom1 ?? zd.zoom1;
  const z2 = zoom2 ?? zd.zoom2;

  const main: Panel = { x: 60, y: 40, w: 540, h: 520, ...b };
  const in1: Panel = { x: 680, y: 60, w: 240, h: 190, jMin: z1.j0, jMax: z1.j1, gMin: z1.g0, gMax: z1.g1 };
  const in2: Panel = { x: 680, y: 330, w: 240, h: 190, jMin: z2.j0, jMax: z2.j1, gMin: z2.g0, gMax: z2.g1 };

  const labelsPresent = PHASE_LABELS.filter((lab) => rows.some((r) => r.label === lab));

  const pieces: string[] = [];
  pieces.push(rect(0, 0, W, H, "#ffffff"));

  const panels: [Panel, string, string, string][] = [
    [main, "(a) phase diagram", "clip-main", "main"],
    [in1, "(b) zoom: AFM-S window", "clip-in1", "inset1"],
    [in2, "(c) zoom: boundary detail", "clip-in2", "inset2"],
  ];
  const defs: string[] = [];
  for (const [panel, title, clipId, gid] of panels) {
    const { frame, clip } = axes(panel, title, clipId);
    defs.push(clip);
    pieces.push(
      tag(
        "g",
        { id: gid },
        tag("g", { "clip-path": `url(#${clipId})` }, cells(panel, rows) + boundaryLayers(panel, boundaries)) +
          frame,
      ),
    );
    if (gid !== "main") {
      // marker of the zoom window on the main panel
      const x0 = sx(main, Math.max(panel.jMin, main.jMin));
      const x1 = sx(main, Math.min(panel.jMax, main.jMax));
      const y0 = sy(main, Math.min(panel.gMax, main.gMax));
      const y1 = sy(main, Math.max(panel.gMin, main.gMin));
      pieces.push(
        rect(x0, y0, x1 - x0, y1 - y0, "none", {
          stroke: "#444444",
          "stroke-width": 0.8,
          "stroke-dasharray": "3,2",
        }),
      );
    }
  }
  pieces.push(legend(680, 585, labelsPresent));

  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" viewBox="0 0 ${W} ${H}">` +
    tag("defs", {}, defs.join("")) +
    pieces.join("") +
    "</svg>\n"
  );
}
