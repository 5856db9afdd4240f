// Wire types for the similarity exploration API. The UI performs no
// similarity math: every number rendered comes from one of these fields.
export const ASPECTS = ["topology", "text", "authors", "numeric"];
export const ASPECT_LABELS = {
    topology: "Citation Proximity",
    text: "Text Similarity",
    authors: "Author Similarity",
    numeric: "Numeric Attribute Similarity",
};
