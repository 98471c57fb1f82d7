import { PHASE_LABELS, ScanRow } from "./types.js";

const EXPECTED_HEADER = "j,g,energy,alpha_or_h,m_x,m_z,stag,label,method,flags";

export class LabelError extends Error {}
export class FormatError extends Error {}

/**
 * Parse a phasekit grid CSV.
 *
 * Rows flagged `error:*` by the scanner carry an empty label and are
 * returned separately; any other label outside the four-phase whitelist
 * aborts with the offending row numbers.
 */
export function parseGrid(text: string): { rows: ScanRow[]; skipped: number[] } {
  const lines = text.trim().split(/\r?\n/);
  if (lines.length === 0 || lines[0] !== EXPECTED_HEADER) {
    throw new FormatError(
      `unexpected header: got "${lines[0] ?? ""}", want "${EXPECTED_HEADER}"`,
    );
  }
  const rows: ScanRow[] = [];
  const skipped: number[] = [];
  const badRows: number[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== 10) {
      throw new FormatError(`row ${i + 1}: expected 10 columns, got ${parts.length}`);
    }
    const label = parts[7];
    const flags = parts[9];
    if (label === "" && flags.startsWith("error:")) {
      skipped.push(i + 1);
      continue;
    }
    if (!(PHASE_LABELS as readonly string[]).includes(label)) {
      badRows.push(i + 1);
      continue;
    }
    rows.push({
      j: Number(parts[0]),
      g: Number(parts[1]),
      energy: Number(parts[2]),
      alphaOrH: Number(parts[3]),
      mX: Number(parts[4]),
      mZ: Number(parts[5]),
      stag: Number(parts[6]),
      label,
      method: parts[8],
      flags,
    });
  }
  if (badRows.length > 0) {
    throw new LabelError(`unknown phase label in rows: ${badRows.join(", ")}`);
  }
  if (rows.length === 0) {
    throw new FormatError("grid CSV contains no usable rows");
  }
  return { rows, skipped };
}
