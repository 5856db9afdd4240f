"""Threshold calibration against the exact structural overrides.

For the two aspects with a structural ground truth (citation distance <= 2
for topology, shared author for authors), sweep candidate cuts over the
embedding cosine scores and report how well ">= theta_hi" recovers the
structural Similar class.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .corpus import Corpus, build_citation_graph
from .embedding.vectors import AspectId, AspectVectors
from .simstore import exact_mode_override, snap_scores

DEFAULT_GRID = tuple(round(0.1 * k, 2) for k in range(1, 10))


@dataclass
class CalibrationRow:
    aspect: str
    theta_hi: float
    theta_lo: float
    true_positive: int
    false_positive: int
    false_negative: int
    precision: float
    recall: float
    f1: float
    uncertain_share: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _flat_scores(vectors: AspectVectors, block_size: int = 512) -> np.ndarray:
    """All n(n-1)/2 pairwise cosines in (i, j) row-major upper-triangle order."""
    matrix = vectors.matrix
    n = len(vectors.ids)
    transposed = sparse.csr_matrix(matrix).T if sparse.issparse(matrix) else matrix.T
    chunks = []
    for start in range(0, n, block_size):
        stop = min(start + block_size, n)
        tile = matrix[start:stop] @ transposed
        if sparse.issparse(tile):
            tile = np.asarray(tile.todense())
        tile = snap_scores(tile)
        for local_i in range(stop - start):
            chunks.append(tile[local_i, start + local_i + 1 :])
    return np.concatenate(chunks) if chunks else np.empty(0)


def _flat_labels(similar_pairs, ids) -> np.ndarray:
    n = len(ids)
    index = {article_id: i for i, article_id in enumerate(ids)}
    labels = np.zeros(n * (n - 1) // 2, dtype=bool)
    for a, b in similar_pairs:
        i, j = index[a], index[b]
        if i > j:
            i, j = j, i
        labels[i * (2 * n - i - 1) // 2 + (j - i - 1)] = True
    return labels


def sweep_aspect(
    vectors: AspectVectors,
    exact_similar,
    grid=DEFAULT_GRID,
) -> list[CalibrationRow]:
    scores = _flat_scores(vectors)
    labels = _flat_labels(exact_similar, vectors.ids)
    positives = int(labels.sum())
    rows = []
    for hi in grid:
        predicted = scores >= hi
        tp = int((predicted & labels).sum())
        fp = int(predicted.sum()) - tp
        fn = positives - tp
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / positives if positives else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        for lo in grid:
            if lo > hi:
                continue
            uncertain = float(((scores > lo) & (scores < hi)).mean()) if scores.size else 0.0
            rows.append(
                CalibrationRow(
                    aspect=vectors.aspect.value,
                    theta_hi=float(hi),
                    theta_lo=float(lo),
                    true_positive=tp,
                    false_positive=fp,
                    false_negative=fn,
                    precision=precision,
                    recall=recall,
                    f1=f1,
                    uncertain_share=uncertain,
                )
            )
    return rows


def calibrate(
    corpus: Corpus,
    vectors: dict[AspectId, AspectVectors],
    grid=DEFAULT_GRID,
) -> dict:
    """Sweep thresholds for every aspect that has both vectors and a
    structural reference; returns rows plus a best-F1 recommendation."""
    graph = build_citation_graph(corpus)
    overrides = exact_mode_override(graph, corpus)
    rows: list[CalibrationRow] = []
    recommended = {}
    for aspect, store in overrides.stores.items():
        if aspect not in vectors:
            continue
        aspect_rows = sweep_aspect(vectors[aspect], store.similar.keys(), grid)
        rows.extend(aspect_rows)
        if aspect_rows:
            best = max(aspect_rows, key=lambda r: (r.f1, -r.uncertain_share))
            recommended[aspect.value] = {
                "theta_hi": best.theta_hi,
                "theta_lo": best.theta_lo,
                "f1": best.f1,
            }
    return {"rows": [r.to_dict() for r in rows], "recommended": recommended}
