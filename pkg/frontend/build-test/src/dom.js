// String-building helpers. Views render to markup strings so they stay pure
// and contract-testable without a DOM.
export function escapeHtml(value) {
    return value
        .replace(/&/g, "&amp;")
        .replace(/</g, "&lt;")
        .replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;")
        .replace(/'/g, "&#39;");
}
export function attrs(pairs) {
    const parts = [];
    for (const [key, value] of Object.entries(pairs)) {
        if (value === undefined || value === false)
            continue;
        if (value === true) {
            parts.push(key);
        }
        else {
            parts.push(`${key}="${escapeHtml(String(value))}"`);
        }
    }
    return parts.join(" ");
}
export function tag(name, attributes, children = "") {
    const head = attrs(attributes);
    return `<${name}${head ? " " + head : ""}>${children}</${name}>`;
}
export function formatScore(value) {
    return value.toFixed(3);
}
export function formatPercent(value) {
    return `${(value * 100).toFixed(1)}%`;
}
