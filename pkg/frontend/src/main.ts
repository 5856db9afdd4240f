// Browser bootstrap: wires the tri-state sliders, tracking, uploads, and
// the four coordinated views to the controller. Single UI thread; stale
// responses are discarded inside the controller.

import { ApiClient } from "./api.js";
import { Controller } from "./controller.js";
import { renderBanner } from "./render/banner.js";
import { renderClusteringView } from "./render/clusters.js";
import { renderNetworkView } from "./render/network.js";
import { renderTargetView } from "./render/target.js";
import { renderAssessmentView, type AssessmentData } from "./render/assessment.js";
import { renderUploadMatches } from "./render/upload.js";
import { encodeHash, parseHash } from "./state.js";
import {
  ASPECTS,
  ASPECT_LABELS,
  type AspectName,
  type Choice,
  type QueryPayload,
  type TargetPayload,
} from "./types.js";

const api = new ApiClient((url, init) => fetch(url, init));

let lastQuery: QueryPayload | null = null;
let lastTarget: TargetPayload | null = null;
let trackedSet = new Set<string>();

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

function showError(code: string, message: string): void {
  const banner = el("error-banner");
  banner.textContent = `${code}: ${message}`;
  banner.classList.add("visible");
}

function clearError(): void {
  el("error-banner").classList.remove("visible");
}

const controller = new Controller(api, {
  onQuery(payload, state) {
    clearError();
    lastQuery = payload;
    trackedSet = new Set(payload?.tracked ?? []);
    el("banner").innerHTML = renderBanner(payload);
    el("clustering-view").innerHTML = renderClusteringView(payload);
    el("network-view").innerHTML = `<div class="empty-view">Click a cluster.</div>`;
    el("target-view").innerHTML = `<div class="empty-view">Click an article node.</div>`;
    el("assessment-view").innerHTML = `<div class="empty-view">Click a comparison node.</div>`;
    window.location.hash = encodeHash(state);
  },
  onNetwork(payload) {
    clearError();
    el("network-view").innerHTML = renderNetworkView(payload, trackedSet);
  },
  onTarget(payload) {
    clearError();
    lastTarget = payload;
    el("target-view").innerHTML = renderTargetView(payload, trackedSet);
  },
  onUpload(payload) {
    clearError();
    el("upload-results").innerHTML = renderUploadMatches(payload);
  },
  onError: showError,
});

function renderSliders(): void {
  const host = el("sliders");
  host.innerHTML = ASPECTS.map((aspect) => {
    const options = (["yes", "inactive", "no"] as Choice[])
      .map(
        (choice) =>
          `<label class="slider-choice"><input type="radio" name="slider-${aspect}" ` +
          `value="${choice}" ${controller.state.criteria[aspect] === choice ? "checked" : ""}>` +
          `${choice === "inactive" ? "off" : choice}</label>`,
      )
      .join("");
    return (
      `<fieldset class="slider" data-aspect="${aspect}">` +
      `<legend>${ASPECT_LABELS[aspect]}</legend>${options}</fieldset>`
    );
  }).join("");

  host.querySelectorAll<HTMLInputElement>("input[type=radio]").forEach((input) => {
    input.addEventListener("change", () => {
      const aspect = input.name.replace("slider-", "") as AspectName;
      void controller.changeSlider(aspect, input.value as Choice);
    });
  });
}

async function openAssessment(otherId: string): Promise<void> {
  if (!lastTarget) return;
  const entry = lastTarget.entries.find((e) => e.id === otherId);
  if (!entry) return;
  try {
    const [target, other] = await Promise.all([
      api.article(lastTarget.target),
      api.article(otherId),
    ]);
    const data: AssessmentData = {
      target,
      other,
      aspects: entry.aspects,
      sharedAuthors: entry.shared_authors,
      sharedWords: entry.shared_words,
    };
    el("assessment-view").innerHTML = renderAssessmentView(data);
  } catch (error) {
    const anyError = error as { code?: string; message?: string };
    showError(anyError.code ?? "Error", anyError.message ?? String(error));
  }
}

function wireViews(): void {
  el("clustering-view").addEventListener("click", (event) => {
    const circle = (event.target as Element).closest<SVGElement>("[data-members]");
    if (!circle || !lastQuery) return;
    const members = (circle.getAttribute("data-members") ?? "").split(",").filter(Boolean);
    if (members.length) void controller.openCluster(members);
  });

  el("network-view").addEventListener("click", (event) => {
    const node = (event.target as Element).closest<SVGElement>(".nl-node[data-id]");
    if (node) void controller.openTarget(node.getAttribute("data-id")!);
  });

  el("network-view").addEventListener("mouseover", (event) => {
    const node = (event.target as Element).closest<Element>("[data-id]");
    document
      .querySelectorAll(".cross-highlight")
      .forEach((n) => n.classList.remove("cross-highlight"));
    if (!node) return;
    const id = node.getAttribute("data-id")!;
    document
      .querySelectorAll(`#network-view [data-id="${CSS.escape(id)}"]`)
      .forEach((n) => n.classList.add("cross-highlight"));
  });

  el("target-view").addEventListener("click", (event) => {
    const node = (event.target as Element).closest<SVGElement>(".comparison-node[data-id]");
    if (node) void openAssessment(node.getAttribute("data-id")!);
  });

  el("target-view").addEventListener("mouseover", (event) => {
    const node = (event.target as Element).closest<SVGElement>(".comparison-node[data-id]");
    const panel = document.getElementById("target-hover");
    if (!panel) return;
    if (!node) {
      panel.textContent = "";
      return;
    }
    const authors = (node.getAttribute("data-shared-authors") ?? "").split("|").filter(Boolean);
    const words = (node.getAttribute("data-shared-words") ?? "").split("|").filter(Boolean);
    panel.textContent =
      `${node.getAttribute("data-id")}` +
      (authors.length ? ` | co-authors: ${authors.join(", ")}` : "") +
      (words.length ? ` | co-words: ${words.join(", ")}` : "");
  });
}

function wireTracking(): void {
  const apply = (): void => {
    const keyword = (el("track-keyword") as HTMLInputElement).value.trim() || null;
    const author = (el("track-author") as HTMLInputElement).value.trim() || null;
    void controller.changeTracking(keyword, author);
  };
  el("track-apply").addEventListener("click", apply);
  for (const id of ["track-keyword", "track-author"]) {
    el(id).addEventListener("keydown", (event) => {
      if ((event as KeyboardEvent).key === "Enter") apply();
    });
  }
}

function wireUpload(): void {
  el("upload-button").addEventListener("click", () => {
    const text = (el("upload-text") as HTMLTextAreaElement).value.trim();
    if (text) void controller.uploadAbstract(text);
  });
}

function boot(): void {
  renderSliders();
  wireViews();
  wireTracking();
  wireUpload();
  const restored = parseHash(window.location.hash);
  if (restored.tracking?.keyword) {
    (el("track-keyword") as HTMLInputElement).value = restored.tracking.keyword;
  }
  if (restored.tracking?.author) {
    (el("track-author") as HTMLInputElement).value = restored.tracking.author;
  }
  void controller.restore(restored).then(() => renderSliders());
  void api
    .meta()
    .then((meta) => {
      el("corpus-line").textContent =
        `${meta.articles} articles, ${meta.span[0]}-${meta.span[1]}`;
    })
    .catch(() => showError("Offline", "API not reachable"));
}

boot();
