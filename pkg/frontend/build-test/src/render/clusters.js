// Clustering view: one circle per cluster, sized by member count. The
// horizontal position and the fill both encode the server's avg_score; when
// tracking is active the fill becomes green with opacity exactly equal to
// the cluster's tracked_fraction.
import { formatScore, tag } from "../dom.js";
const WIDTH = 920;
const MARGIN = 40;
export function clusterRadius(size) {
    return 8 + 5 * Math.sqrt(size);
}
export function clusterFill(payload, index) {
    const cluster = payload.clusters[index];
    if (payload.tracked !== null) {
        return `rgba(26, 140, 60, ${cluster.tracked_fraction})`;
    }
    const lightness = 88 - 48 * Math.min(1, Math.max(0, cluster.avg_score));
    return `hsl(215, 72%, ${lightness}%)`;
}
export function clusterX(avgScore) {
    const clamped = Math.min(1, Math.max(0, avgScore));
    return MARGIN + clamped * (WIDTH - 2 * MARGIN);
}
export function renderClusteringView(payload) {
    if (payload === null) {
        return `<div class="empty-view">No query yet.</div>`;
    }
    const sorted = payload.clusters
        .map((cluster, index) => ({ cluster, index }))
        .sort((a, b) => a.cluster.avg_score - b.cluster.avg_score);
    // Row packing with collision avoidance along the score axis.
    const rows = [];
    const placed = sorted.map(({ cluster, index }) => {
        const radius = clusterRadius(cluster.size);
        const x = clusterX(cluster.avg_score);
        let row = 0;
        while (row < rows.length && x - radius < rows[row])
            row++;
        if (row === rows.length)
            rows.push(-Infinity);
        rows[row] = x + radius + 6;
        return { cluster, index, x, radius, row };
    });
    const rowHeight = 64;
    const height = Math.max(140, rows.length * rowHeight + 60);
    const circles = placed
        .map(({ cluster, index, x, radius, row }) => {
        const y = 40 + row * rowHeight;
        const circle = tag("circle", {
            class: "cluster-circle",
            cx: x.toFixed(1),
            cy: y,
            r: radius.toFixed(1),
            fill: clusterFill(payload, index),
            stroke: "#3a4a5a",
            "data-cluster": index,
            "data-members": cluster.members.join(","),
            "data-avg-score": String(cluster.avg_score),
            "data-tracked-fraction": String(cluster.tracked_fraction),
        });
        const label = tag("text", { class: "cluster-size", x: x.toFixed(1), y: y + 4, "text-anchor": "middle" }, String(cluster.size));
        const hover = tag("title", {}, `${cluster.size} articles, avg score ${formatScore(cluster.avg_score)}` +
            (payload.tracked !== null
                ? `, tracked ${Math.round(cluster.tracked_fraction * 100)}%`
                : ""));
        return tag("g", { class: "cluster" }, hover + circle + label);
    })
        .join("");
    const axis = tag("line", {
        x1: MARGIN,
        y1: height - 28,
        x2: WIDTH - MARGIN,
        y2: height - 28,
        stroke: "#9aa7b4",
    }) +
        tag("text", { x: MARGIN, y: height - 10, class: "axis-label" }, "average pairwise similarity →");
    const svg = tag("svg", { viewBox: `0 0 ${WIDTH} ${height}`, class: "clustering-svg", role: "img" }, circles + axis);
    const unclustered = renderUnclustered(payload);
    return svg + unclustered;
}
function renderUnclustered(payload) {
    const tracked = new Set(payload.tracked ?? []);
    const shown = payload.unclustered.slice(0, 40);
    const icons = shown
        .map((id) => tag("span", {
        class: tracked.has(id) ? "article-icon tracked" : "article-icon",
        "data-article": id,
        title: id,
    }, "▪"))
        .join("");
    const more = payload.unclustered.length > shown.length
        ? `<span class="more">+${payload.unclustered.length - shown.length} more</span>`
        : "";
    return (`<div class="unclustered"><span class="unclustered-count">` +
        `${payload.unclustered.length} unclustered</span>${icons}${more}</div>`);
}
