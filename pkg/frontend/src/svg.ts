/** Minimal string-building SVG emitter. */

export type Attrs = { [key: string]: string | number };

function escapeXml(value: string): string {
  return value
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function attrString(attrs: Attrs): string {
  return Object.entries(attrs)
    .map(([k, v]) => ` ${k}="${escapeXml(String(v))}"`)
    .join("");
}

export function tag(name: string, attrs: Attrs, children?: string[]): string {
  const open = `<${name}${attrString(attrs)}`;
  if (children === undefined || children.length === 0) {
    return `${open}/>`;
  }
  return `${open}>${children.join("")}</${name}>`;
}

export function text(content: string, attrs: Attrs): string {
  return `<text${attrString(attrs)}>${escapeXml(content)}</text>`;
}

export function svgDocument(
  width: number,
  height: number,
  children: string[],
): string {
  const root = tag(
    "svg",
    {
      xmlns: "http://www.w3.org/2000/svg",
      width,
      height,
      viewBox: `0 0 ${width} ${height}`,
    },
    children,
  );
  return `<?xml version="1.0" encoding="UTF-8"?>\n${root}\n`;
}
