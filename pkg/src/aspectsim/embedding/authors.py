"""Co-author embedding: binary indicators over the global author vocabulary.

With L2-normalized indicator rows, the cosine of two articles equals
|A intersect B| / sqrt(|A| * |B|), the Ochiai coefficient of their author
sets, so set-based and vector-based computations agree exactly.
"""

from __future__ import annotations

from scipy import sparse
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ..corpus import Corpus
from .vectors import AspectId, AspectVectors, l2_normalize_rows


class AuthorsEmbedder(BaseEstimator):
    def fit(self, author_lists, y=None):
        names = sorted({name for authors in author_lists for name in authors})
        self.author_vocabulary_ = {name: i for i, name in enumerate(names)}
        return self

    def transform(self, author_lists) -> sparse.csr_matrix:
        check_is_fitted(self, "author_vocabulary_")
        indptr = [0]
        indices: list[int] = []
        for authors in author_lists:
            cols = sorted({self.author_vocabulary_[a] for a in authors if a in self.author_vocabulary_})
            indices.extend(cols)
            indptr.append(len(indices))
        matrix = sparse.csr_matrix(
            ([1.0] * len(indices), indices, indptr),
            shape=(len(author_lists), len(self.author_vocabulary_)),
        )
        normalized, _ = l2_normalize_rows(matrix)
        return normalized

    def fit_transform(self, author_lists, y=None):
        return self.fit(author_lists).transform(author_lists)


def ochiai(a: set, b: set) -> float:
    """Set cosine: |A & B| / sqrt(|A| * |B|). Defined 0 for an empty side."""
    if not a or not b:
        return 0.0
    return len(a & b) / ((len(a) * len(b)) ** 0.5)


def embed_authors(corpus: Corpus) -> AspectVectors:
    embedder = AuthorsEmbedder()
    matrix = embedder.fit_transform([a.authors for a in corpus.articles])
    return AspectVectors(
        aspect=AspectId.AUTHORS,
        ids=corpus.ids,
        matrix=matrix,
        meta={"source": "builtin", "author_count": len(embedder.author_vocabulary_)},
    )
