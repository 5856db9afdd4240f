import { escapeHtml } from "../dom.js";
// The banner shows the server's explanation verbatim: the text IS the stats
// payload, nothing is recomputed client-side.
export function bannerText(payload) {
    return payload.banner;
}
export function renderBanner(payload) {
    if (payload === null) {
        return `<span class="banner-idle">Set at least one similarity criterion to run a query.</span>`;
    }
    return `<span class="banner-text">${escapeHtml(bannerText(payload))}</span>`;
}
