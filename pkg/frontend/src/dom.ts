// String-building helpers. Views render to markup strings so they stay pure
// and contract-testable without a DOM.

export function escapeHtml(value: string): string {
  return value
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

export function attrs(pairs: Record<string, string | number | boolean | undefined>): string {
  const parts: string[] = [];
  for (const [key, value] of Object.entries(pairs)) {
    if (value === undefined || value === false) continue;
    if (value === true) {
      parts.push(key);
    } else {
      parts.push(`${key}="${escapeHtml(String(value))}"`);
    }
  }
  return parts.join(" ");
}

export function tag(
  name: string,
  attributes: Record<string, string | number | boolean | undefined>,
  children = "",
): string {
  const head = attrs(attributes);
  return `<${name}${head ? " " + head : ""}>${children}</${name}>`;
}

export function formatScore(value: number): string {
  return value.toFixed(3);
}

export function formatPercent(value: number): string {
  return `${(value * 100).toFixed(1)}%`;
}
