import { escapeHtml, formatScore } from "../dom.js";
import type { UploadPayload } from "../types.js";

export function renderUploadMatches(payload: UploadPayload): string {
  if (!payload.matches.length) {
    return `<p class="empty-view">No articles with high text similarity.</p>`;
  }
  const rows = payload.matches
    .map(
      (m, rank) =>
        `<tr data-id="${escapeHtml(m.id)}"><td>${rank + 1}</td>` +
        `<td class="match-id">${escapeHtml(m.id)}</td>` +
        `<td>${escapeHtml(m.title)}</td>` +
        `<td class="match-score">${formatScore(m.score)}</td></tr>`,
    )
    .join("");
  return (
    `<table class="upload-matches"><thead><tr>` +
    `<th>#</th><th>article</th><th>title</th><th>text score</th>` +
    `</tr></thead><tbody>${rows}</tbody></table>`
  );
}
