"""Abstract-text embedding.

Builtin mode is a plain TF-IDF over the corpus vocabulary: weight of token t
in document d is count(t, d) * log(N / df(t)), L2-normalized, kept sparse so
zero/one cosine cases are exact. Imported mode loads externally produced
vectors verbatim (then normalizes), for projects that embed abstracts with a
pretrained encoder out of band.

An article whose abstract yields no weighted tokens gets the zero-information
sentinel vector: it scores cosine 0 against everything and can never be
text-similar.
"""

from __future__ import annotations

from collections import Counter

import numpy as np
from scipy import sparse
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ..corpus import Corpus, tokenize
from ..errors import NoFitState, NoKnownTokens
from .vectors import AspectId, AspectVectors, l2_normalize_rows, read_imported_vectors


class TextEmbedder(BaseEstimator):
    """TF-IDF text vectorizer over the corpus vocabulary."""

    def fit(self, documents, y=None):
        token_lists = [tokenize(doc) for doc in documents]
        vocab = sorted({t for tokens in token_lists for t in tokens})
        self.vocabulary_ = {t: i for i, t in enumerate(vocab)}
        n_docs = len(documents)
        df = Counter()
        for tokens in token_lists:
            df.update(set(tokens))
        self.idf_ = np.array(
            [np.log(n_docs / df[t]) for t in vocab], dtype=np.float64
        )
        self.n_docs_ = n_docs
        return self

    def transform(self, documents) -> sparse.csr_matrix:
        """Weighted, L2-normalized rows; rows with no weighted tokens are zero."""
        check_is_fitted(self, "vocabulary_")
        indptr = [0]
        indices: list[int] = []
        data: list[float] = []
        for doc in documents:
            counts = Counter(
                self.vocabulary_[t] for t in tokenize(doc) if t in self.vocabulary_
            )
            for col in sorted(counts):
                weight = counts[col] * self.idf_[col]
                if weight != 0.0:
                    indices.append(col)
                    data.append(weight)
            indptr.append(len(indices))
        matrix = sparse.csr_matrix(
            (data, indices, indptr), shape=(len(documents), len(self.vocabulary_))
        )
        normalized, _ = l2_normalize_rows(matrix)
        return normalized

    def fit_transform(self, documents, y=None):
        return self.fit(documents).transform(documents)

    def to_state(self) -> dict:
        check_is_fitted(self, "vocabulary_")
        return {
            "vocabulary": sorted(self.vocabulary_, key=self.vocabulary_.get),
            "idf": self.idf_.tolist(),
            "n_docs": self.n_docs_,
        }

    @classmethod
    def from_state(cls, state: dict) -> "TextEmbedder":
        embedder = cls()
        embedder.vocabulary_ = {t: i for i, t in enumerate(state["vocabulary"])}
        embedder.idf_ = np.asarray(state["idf"], dtype=np.float64)
        embedder.n_docs_ = int(state["n_docs"])
        return embedder


def embed_text(
    corpus: Corpus,
    mode: str = "builtin",
    import_path=None,
) -> tuple[AspectVectors, TextEmbedder | None]:
    """Text aspect vectors plus the retained fit state (builtin mode only)."""
    if mode == "builtin":
        embedder = TextEmbedder()
        matrix = embedder.fit_transform([a.abstract for a in corpus.articles])
        zero_rows = np.flatnonzero(np.diff(matrix.indptr) == 0)
        sentinels = {corpus.ids[i] for i in zero_rows}
        vectors = AspectVectors(
            aspect=AspectId.TEXT,
            ids=corpus.ids,
            matrix=matrix,
            sentinels=sentinels,
            meta={"source": "builtin", "vocabulary_size": len(embedder.vocabulary_)},
        )
        return vectors, embedder
    if mode == "imported":
        raw = read_imported_vectors(import_path, corpus.ids)
        matrix, zero_rows = l2_normalize_rows(raw)
        sentinels = {corpus.ids[i] for i in zero_rows}
        vectors = AspectVectors(
            aspect=AspectId.TEXT,
            ids=corpus.ids,
            matrix=matrix,
            sentinels=sentinels,
            meta={"source": "imported", "path": str(import_path)},
        )
        return vectors, None
    raise ValueError(f"unknown text mode {mode!r}")


def embed_external_abstract(text: str, fitted: TextEmbedder | None) -> np.ndarray:
    """TF-IDF vector of an uploaded abstract under the corpus fit state.

    Out-of-vocabulary tokens are ignored. Raises NoFitState when the corpus
    was embedded in imported mode, NoKnownTokens when nothing usable remains.
    """
    if fitted is None:
        raise NoFitState("text aspect was imported; raw-text upload needs the builtin fit")
    row = fitted.transform([text])
    if row.nnz == 0:
        raise NoKnownTokens("no tokens survive tokenization and vocabulary lookup")
    return np.asarray(row.todense()).ravel()
