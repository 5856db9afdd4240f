// Similarity assessment view: the full pairwise detail for one comparison.
// Target data is color-coded blue; co-occurring authors and abstract words
// are wrapped in highlight spans so they can be assessed in context.
import { escapeHtml, formatScore, tag } from "../dom.js";
import { ASPECTS } from "../types.js";
export function highlightWords(text, shared) {
    if (!shared.length)
        return escapeHtml(text);
    const wanted = new Set(shared.map((w) => w.toLowerCase()));
    return text
        .split(/(\s+)/)
        .map((chunk) => {
        const token = chunk.toLowerCase().replace(/[^\p{L}\p{N}]+/gu, "");
        if (token && wanted.has(token)) {
            return `<mark class="co-occur">${escapeHtml(chunk)}</mark>`;
        }
        return escapeHtml(chunk);
    })
        .join("");
}
function authorList(article, shared) {
    const wanted = new Set(shared);
    return article.authors
        .map((name) => wanted.has(name)
        ? `<span class="co-occur author">${escapeHtml(name)}</span>`
        : escapeHtml(name))
        .join(", ");
}
function articleColumn(article, data, isTarget) {
    const classes = isTarget ? "article-detail target-side" : "article-detail";
    return tag("div", { class: classes, "data-id": article.id }, `<h4>${escapeHtml(article.id)}: ${escapeHtml(article.title)}</h4>` +
        `<p class="meta-line">${authorList(article, data.sharedAuthors)} (${article.year})</p>` +
        `<p class="meta-line">citation counts: ${article.cite_count_a} / ${article.cite_count_b}</p>` +
        `<p class="abstract">${highlightWords(article.abstract, data.sharedWords)}</p>`);
}
export function renderAssessmentView(data) {
    const chips = ASPECTS.filter((aspect) => data.aspects[aspect])
        .map((aspect) => {
        const detail = data.aspects[aspect];
        return tag("span", { class: `class-chip ${detail.class}`, "data-aspect": aspect }, `${aspect}: ${detail.class} (${formatScore(detail.score)})`);
    })
        .join("");
    return (`<div class="assessment-chips">${chips}</div>` +
        `<div class="assessment-columns">` +
        articleColumn(data.target, data, true) +
        articleColumn(data.other, data, false) +
        `</div>`);
}
