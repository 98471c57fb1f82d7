/** Minimal deterministic SVG string builders (no DOM, no randomness). */

export function fmt(x: number): string {
  if (!Number.isFinite(x)) return "0";
  const s = x.toFixed(3);
  return s === "-0.000" ? "0.000" : s;
}

export function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function tag(
  name: string,
  attrs: Record<string, string | number>,
  children?: string,
): string {
  const a = Object.entries(attrs)
    .map(([k, v]) => ` ${k}="${typeof v === "number" ? fmt(v) : esc(String(v))}"`)
    .join("");
  return children === undefined || children === ""
    ? `<${name}${a}/>`
    : `<${name}${a}>${children}</${name}>`;
}

export function rect(
  x: number,
  y: number,
  w: number,
  h: number,
  fill: string,
  extra: Record<string, string | number> = {},
): string {
  return tag("rect", { x, y, width: Math.max(w, 0), height: Math.max(h, 0), fill, ...extra });
}

export function line(
  x1: number,
  y1: number,
  x2: number,
  y2: number,
  extra: Record<string, string | number> = {},
): string {
  return tag("line", { x1, y1, x2, y2, ...extra });
}

export function polyline(pts: [number, number][], extra: Record<string, string | number> = {}): string {
  const points = pts.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return tag("polyline", { points, fill: "none", ...extra });
}

export function text(
  x: number,
  y: number,
  content: string,
  extra: Record<string, string | number> = {},
): string {
  return tag("text", { x, y, "font-family": "Helvetica, Arial, sans-serif", ...extra }, esc(content));
}
