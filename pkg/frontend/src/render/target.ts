// Target-to-all view: matches on the inner ring, near misses on the outer
// ring, radially around the target. Each comparison node shows four aspect
// marks; active criteria get a white frame, and the mark states whether the
// aspect matched. Hover data (co-occurring authors and words) rides along
// in data attributes for the hover panel.

import { escapeHtml, tag } from "../dom.js";
import { ringPosition } from "../layout.js";
import { ASPECTS, type TargetEntry, type TargetPayload } from "../types.js";

const SIZE = 460;
const ASPECT_COLORS: Record<string, string> = {
  topology: "#c77d2e",
  text: "#3c78b5",
  authors: "#7a4fa3",
  numeric: "#3f9464",
};

export function renderTargetView(payload: TargetPayload, tracked: Set<string>): string {
  const matches = payload.entries.filter((e) => e.status === "match");
  const nearMisses = payload.entries.filter((e) => e.status === "near_miss");
  const center = SIZE / 2;

  const summary =
    `<div class="target-summary">Target <strong>${escapeHtml(payload.target)}</strong>: ` +
    `${matches.length} matches and ${nearMisses.length} near misses</div>`;

  const rings =
    tag("circle", { cx: center, cy: center, r: 90, class: "ring ring-match" }) +
    tag("circle", { cx: center, cy: center, r: 170, class: "ring ring-near" });

  const targetNode = tag(
    "g",
    { class: "target-node" },
    tag("circle", { cx: center, cy: center, r: 16, class: "target-circle" }) +
      tag(
        "text",
        { x: center, y: center + 34, "text-anchor": "middle", class: "nl-label" },
        payload.target,
      ),
  );

  const drawRing = (entries: TargetEntry[], radius: number, ringClass: string) =>
    entries
      .map((entry, index) => {
        const p = ringPosition(index, entries.length, center, center, radius);
        return renderComparisonNode(payload, entry, p.x, p.y, ringClass, tracked);
      })
      .join("");

  const svg = tag(
    "svg",
    { viewBox: `0 0 ${SIZE} ${SIZE}`, class: "target-svg", role: "img" },
    rings + drawRing(matches, 90, "match") + drawRing(nearMisses, 170, "near_miss") + targetNode,
  );
  return summary + svg + `<div class="hover-panel" id="target-hover"></div>`;
}

function renderComparisonNode(
  payload: TargetPayload,
  entry: TargetEntry,
  x: number,
  y: number,
  ringClass: string,
  tracked: Set<string>,
): string {
  const marks = ASPECTS.filter((aspect) => entry.aspects[aspect]).map((aspect, i) => {
    const detail = entry.aspects[aspect];
    const choice = payload.criteria[aspect];
    const active = choice === "yes" || choice === "no";
    const satisfied =
      (choice === "yes" && detail.class === "similar") ||
      (choice === "no" && detail.class === "dissimilar");
    const mx = x - 14 + i * 8;
    const my = y + 10;
    return tag("rect", {
      x: mx.toFixed(1),
      y: my.toFixed(1),
      width: 6,
      height: 6,
      fill: ASPECT_COLORS[aspect],
      "fill-opacity": active ? (satisfied ? 1 : 0.25) : 0.55,
      stroke: active ? "#ffffff" : "none",
      "stroke-width": active ? 1.2 : 0,
      class: `aspect-mark aspect-${aspect}` + (active && !satisfied ? " violated" : ""),
    });
  });

  const classes = ["comparison-node", ringClass];
  if (tracked.has(entry.id)) classes.push("tracked");
  return tag(
    "g",
    {
      class: classes.join(" "),
      "data-id": entry.id,
      "data-status": entry.status,
      "data-failing": entry.failing_aspect ?? "",
      "data-shared-authors": entry.shared_authors.join("|"),
      "data-shared-words": entry.shared_words.join("|"),
    },
    tag("title", {}, hoverText(entry)) +
      tag("circle", { cx: x.toFixed(1), cy: y.toFixed(1), r: 8, class: "comparison-circle" }) +
      marks.join("") +
      tag(
        "text",
        { x: x.toFixed(1), y: (y - 12).toFixed(1), "text-anchor": "middle", class: "nl-label" },
        entry.id,
      ),
  );
}

export function hoverText(entry: TargetEntry): string {
  const parts = [`${entry.id} (${entry.status.replace("_", " ")})`];
  if (entry.failing_aspect) parts.push(`fails ${entry.failing_aspect}`);
  if (entry.shared_authors.length) parts.push(`co-authors: ${entry.shared_authors.join(", ")}`);
  if (entry.shared_words.length) parts.push(`co-words: ${entry.shared_words.join(", ")}`);
  return parts.join(" | ");
}
