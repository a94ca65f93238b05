/** Deterministic SVG string building: fixed styles, stable number formatting,
 * no timestamps or generated ids. */

export function fmt(x: number, digits = 2): string {
  if (!Number.isFinite(x)) return x > 0 ? "inf" : "-inf";
  const s = x.toFixed(digits);
  return s === `-${(0).toFixed(digits)}` ? (0).toFixed(digits) : s;
}

/** Compact value formatting for tick labels and annotations. */
export function fmtValue(x: number): string {
  if (!Number.isFinite(x)) return x > 0 ? "inf" : "-inf";
  if (x === 0) return "0";
  const magnitude = Math.abs(x);
  if (magnitude >= 0.01 && magnitude < 10000) {
    const fixed = x.toPrecision(3);
    return String(Number(fixed));
  }
  return x.toExponential(1).replace("+", "");
}

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function tag(
  name: string,
  attrs: Record<string, string | number>,
  children?: string[] | string
): string {
  const parts = Object.entries(attrs)
    .map(([k, v]) => `${k}="${typeof v === "number" ? fmt(v) : v}"`)
    .join(" ");
  const open = parts.length > 0 ? `<${name} ${parts}>` : `<${name}>`;
  if (children === undefined) {
    return parts.length > 0 ? `<${name} ${parts}/>` : `<${name}/>`;
  }
  const body = Array.isArray(children) ? children.join("") : children;
  return `${open}${body}</${name}>`;
}

export const STYLE = {
  font: "font-family:Helvetica,Arial,sans-serif",
  axis: "#333333",
  grid: "#dddddd",
  series: ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"],
  contour: "#d62728",
};

export function svgDocument(width: number, height: number, children: string[]): string {
  const body = children.join("\n");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n` +
    `<rect x="0" y="0" width="${width}" height="${height}" fill="#ffffff"/>\n` +
    `${body}\n</svg>\n`
  );
}

export function text(
  x: number,
  y: number,
  content: string,
  options: { size?: number; anchor?: string; fill?: string; rotate?: number } = {}
): string {
  const attrs: Record<string, string | number> = {
    x,
    y,
    "font-size": options.size ?? 11,
    "text-anchor": options.anchor ?? "start",
    fill: options.fill ?? STYLE.axis,
    style: STYLE.font,
  };
  if (options.rotate !== undefined) {
    attrs.transform = `rotate(${options.rotate} ${fmt(x)} ${fmt(y)})`;
  }
  return tag("text", attrs, esc(content));
}

export function polyline(points: Array<[number, number]>, stroke: string, width = 1.5, dash?: string): string {
  const attrs: Record<string, string | number> = {
    points: points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" "),
    fill: "none",
    stroke,
    "stroke-width": width,
  };
  if (dash) attrs["stroke-dasharray"] = dash;
  return tag("polyline", attrs);
}
