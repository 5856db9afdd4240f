"""Numeric-attribute embedding from the two citation counts.

Each article maps to (log(1 + count_a), log(1 + count_b), 1.0). The constant
third component keeps every vector nonzero and every pairwise cosine
strictly positive. Rows are L2-normalized like the other aspects; cosine is
scale-invariant so the stated pairwise values are unchanged.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from ..corpus import Corpus
from .vectors import AspectId, AspectVectors, l2_normalize_rows


class NumericEmbedder(BaseEstimator):
    """Stateless transform; fit() exists only for pipeline compatibility."""

    def fit(self, count_pairs, y=None):
        return self

    def transform(self, count_pairs) -> np.ndarray:
        counts = np.asarray(count_pairs, dtype=np.float64)
        if counts.ndim != 2 or counts.shape[1] != 2:
            raise ValueError("expected an (n, 2) array of citation counts")
        if (counts < 0).any():
            raise ValueError("citation counts must be non-negative")
        raw = np.column_stack(
            [np.log1p(counts[:, 0]), np.log1p(counts[:, 1]), np.ones(len(counts))]
        )
        normalized, _ = l2_normalize_rows(raw)
        return normalized

    def fit_transform(self, count_pairs, y=None):
        return self.transform(count_pairs)


def embed_numeric(corpus: Corpus) -> AspectVectors:
    matrix = NumericEmbedder().transform(
        [(a.cite_count_a, a.cite_count_b) for a in corpus.articles]
    )
    return AspectVectors(
        aspect=AspectId.NUMERIC,
        ids=corpus.ids,
        matrix=matrix,
        meta={"source": "builtin"},
    )
