/** Column contract of the phasekit scan CSV. */
export interface ScanRow {
  j: number;
  g: number;
  energy: number;
  alphaOrH: number;
  mX: number;
  mZ: number;
  stag: number;
  label: string;
  method: string;
  flags: string;
}

/** One located boundary point from a phasekit trace JSON. */
export interface BoundaryPoint {
  j: number;
  g_c: number;
  order: "first" | "second";
  jump: number;
  backend: string;
  branch: string;
  deviates: boolean;
}

export interface BoundaryFile {
  method: string;
  backend: string;
  points: BoundaryPoint[];
}

/** j/g window of a zoom inset. */
export interface ZoomRect {
  j0: number;
  j1: number;
  g0: number;
  g1: number;
}

export interface FigureSpec {
  gridPath: string;
  boundaryPaths: string[];
  zoom1?: ZoomRect;
  zoom2?: ZoomRect;
  outPath: string;
}

export const PHASE_LABELS = ["PM-N", "PM-S", "AFM-N", "AFM-S"] as const;
export type PhaseLabel = (typeof PHASE_LABELS)[number];

/** Okabe-Ito palette: colorblind-safe. */
export const LABEL_COLORS: Record<PhaseLabel, string> = {
  "PM-N": "#0072b2",
  "PM-S": "#56b4e9",
  "AFM-N": "#d55e00",
  "AFM-S": "#e69f00",
};
