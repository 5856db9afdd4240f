// View state: tri-state sliders, tracking, selections, URL round-trip.

import { ASPECTS, type AspectName, type Choice } from "./types.js";

export interface ViewState {
  criteria: Record<AspectName, Choice>;
  tracking: { keyword?: string; author?: string } | null;
  selectedCluster: string[] | null;
  selectedTarget: string | null;
  selectedPair: [string, string] | null;
}

export function initialState(): ViewState {
  const criteria = {} as Record<AspectName, Choice>;
  for (const aspect of ASPECTS) criteria[aspect] = "inactive";
  return {
    criteria,
    tracking: null,
    selectedCluster: null,
    selectedTarget: null,
    selectedPair: null,
  };
}

export function cycleChoice(choice: Choice): Choice {
  if (choice === "inactive") return "yes";
  if (choice === "yes") return "no";
  return "inactive";
}

// Criteria edits invalidate every selection: the payloads they referred to
// no longer exist under the new query.
export function setSlider(state: ViewState, aspect: AspectName, choice: Choice): ViewState {
  return {
    ...state,
    criteria: { ...state.criteria, [aspect]: choice },
    selectedCluster: null,
    selectedTarget: null,
    selectedPair: null,
  };
}

export function setTracking(
  state: ViewState,
  keyword: string | null,
  author: string | null,
): ViewState {
  const tracking =
    keyword || author
      ? { ...(keyword ? { keyword } : {}), ...(author ? { author } : {}) }
      : null;
  return { ...state, tracking, selectedCluster: null, selectedTarget: null, selectedPair: null };
}

export function hasActiveCriteria(state: ViewState): boolean {
  return ASPECTS.some((aspect) => state.criteria[aspect] !== "inactive");
}

// Sliders and tracking round-trip through the URL hash so sessions are
// shareable links.
export function encodeHash(state: ViewState): string {
  const params = new URLSearchParams();
  for (const aspect of ASPECTS) {
    if (state.criteria[aspect] !== "inactive") params.set(aspect, state.criteria[aspect]);
  }
  if (state.tracking?.keyword) params.set("kw", state.tracking.keyword);
  if (state.tracking?.author) params.set("au", state.tracking.author);
  const encoded = params.toString();
  return encoded ? `#${encoded}` : "";
}

export function parseHash(hash: string): ViewState {
  const state = initialState();
  const raw = hash.startsWith("#") ? hash.slice(1) : hash;
  if (!raw) return state;
  const params = new URLSearchParams(raw);
  for (const aspect of ASPECTS) {
    const value = params.get(aspect);
    if (value === "yes" || value === "no") state.criteria[aspect] = value;
  }
  const keyword = params.get("kw");
  const author = params.get("au");
  if (keyword || author) {
    state.tracking = {
      ...(keyword ? { keyword } : {}),
      ...(author ? { author } : {}),
    };
  }
  return state;
}
