// Similarity network view: node-link diagram plus adjacency matrix. Nodes
// with a bridge flag get a gold star; tracked articles get green frames.
// Hovering either representation cross-highlights the other via data-id
// attributes (wired in main.ts).

import { formatScore, tag } from "../dom.js";
import { forceLayout } from "../layout.js";
import { ASPECTS, type NetworkPayload } from "../types.js";

const WIDTH = 460;
const HEIGHT = 360;

export function renderNetworkView(payload: NetworkPayload, tracked: Set<string>): string {
  return (
    `<div class="network-pair">` +
    renderNodeLink(payload, tracked) +
    renderAdjacencyMatrix(payload) +
    `</div>`
  );
}

export function renderNodeLink(payload: NetworkPayload, tracked: Set<string>): string {
  const ids = payload.nodes.map((n) => n.id);
  const positions = forceLayout(
    ids,
    payload.edges.map((e) => [e.source, e.target]),
    WIDTH,
    HEIGHT,
  );

  const lines = payload.edges
    .map((edge) => {
      const a = positions.get(edge.source)!;
      const b = positions.get(edge.target)!;
      const detail = ASPECTS.filter((aspect) => edge.aspects[aspect])
        .map((aspect) => `${aspect}: ${formatScore(edge.aspects[aspect].score)} ${edge.aspects[aspect].class}`)
        .join(", ");
      return tag(
        "g",
        { class: "nl-edge", "data-source": edge.source, "data-target": edge.target },
        tag("title", {}, detail) +
          tag("line", {
            x1: a.x.toFixed(1),
            y1: a.y.toFixed(1),
            x2: b.x.toFixed(1),
            y2: b.y.toFixed(1),
            stroke: "#7d8a97",
            "stroke-width": 1.4,
          }),
      );
    })
    .join("");

  const nodes = payload.nodes
    .map((node) => {
      const p = positions.get(node.id)!;
      const classes = ["nl-node"];
      if (tracked.has(node.id)) classes.push("tracked");
      const star = node.bridge
        ? tag(
            "text",
            { class: "bridge-star", x: p.x.toFixed(1), y: (p.y - 14).toFixed(1), "text-anchor": "middle" },
            "★",
          )
        : "";
      return tag(
        "g",
        { class: classes.join(" "), "data-id": node.id },
        tag("title", {}, `${node.id} (betweenness ${node.betweenness})`) +
          tag("circle", {
            cx: p.x.toFixed(1),
            cy: p.y.toFixed(1),
            r: 10,
            class: "nl-circle",
          }) +
          star +
          tag(
            "text",
            { class: "nl-label", x: p.x.toFixed(1), y: (p.y + 24).toFixed(1), "text-anchor": "middle" },
            node.id,
          ),
      );
    })
    .join("");

  return tag(
    "svg",
    { viewBox: `0 0 ${WIDTH} ${HEIGHT}`, class: "network-svg", role: "img" },
    lines + nodes,
  );
}

export function renderAdjacencyMatrix(payload: NetworkPayload): string {
  const order = payload.matrix_order;
  const byPair = new Map<string, string>();
  for (const edge of payload.edges) {
    const detail = ASPECTS.filter((aspect) => edge.aspects[aspect])
      .map((aspect) => `${aspect}: ${formatScore(edge.aspects[aspect].score)}`)
      .join(", ");
    byPair.set(`${edge.source}|${edge.target}`, detail);
    byPair.set(`${edge.target}|${edge.source}`, detail);
  }

  const header =
    "<tr><th></th>" +
    order.map((id) => `<th class="matrix-col" data-id="${id}"><span>${id}</span></th>`).join("") +
    "</tr>";
  const rows = order
    .map((row) => {
      const cells = order
        .map((col) => {
          if (row === col) return `<td class="matrix-diag"></td>`;
          const detail = byPair.get(`${row}|${col}`);
          if (!detail) return `<td class="matrix-empty" data-row="${row}" data-col="${col}"></td>`;
          return (
            `<td class="matrix-filled" data-row="${row}" data-col="${col}" ` +
            `title="${detail}"></td>`
          );
        })
        .join("");
      return `<tr><th class="matrix-row" data-id="${row}">${row}</th>${cells}</tr>`;
    })
    .join("");

  return `<table class="adjacency-matrix">${header}${rows}</table>`;
}
