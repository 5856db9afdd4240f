"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the library's own code paths: component
finding uses a boolean closure instead of union-find, pair classification
uses per-pair dot products instead of tiled products, and betweenness uses
exhaustive simple-path enumeration instead of Brandes' accumulation.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from aspectsim.corpus import Article, Corpus
from aspectsim.embedding.vectors import AspectVectors
from aspectsim.simstore import AspectThresholds, TriState


def make_article(
    article_id: str,
    title: str = "",
    authors=("Solo Author",),
    year: int = 2000,
    abstract: str = "",
    keywords=(),
    counts=(0, 0),
    references=(),
) -> Article:
    return Article(
        id=article_id,
        title=title or f"Title {article_id}",
        authors=tuple(authors),
        year=year,
        abstract=abstract,
        keywords=tuple(keywords),
        cite_count_a=counts[0],
        cite_count_b=counts[1],
        references=tuple(sorted(references)),
    )


def make_corpus(articles, span=None) -> Corpus:
    years = [a.year for a in articles]
    return Corpus(list(articles), span or (min(years), max(years)))


# --- component oracle: boolean transitive closure (Floyd-Warshall) ---


def closure_components(pairs, universe) -> list[set]:
    ids = sorted(universe)
    index = {v: i for i, v in enumerate(ids)}
    n = len(ids)
    reach = np.eye(n, dtype=bool)
    for a, b in pairs:
        reach[index[a], index[b]] = True
        reach[index[b], index[a]] = True
    for k in range(n):
        reach |= reach[:, k : k + 1] & reach[k : k + 1, :]
    groups: dict[tuple, set] = {}
    for i in range(n):
        groups.setdefault(tuple(np.flatnonzero(reach[i])), set()).add(ids[i])
    return list(groups.values())


# --- classification oracle: dense per-pair cosine, no tiling ---


def dense_classes(vectors: AspectVectors, th: AspectThresholds) -> dict[tuple, TriState]:
    """Classify every unordered pair with explicit per-pair arithmetic."""
    ids = vectors.ids
    rows = {i: vectors.vector(i) for i in ids}
    out = {}
    for a, b in combinations(ids, 2):
        if vectors.is_sentinel(a) or vectors.is_sentinel(b):
            score = 0.0
        else:
            u, v = rows[a], rows[b]
            score = float(np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v)))
            score = min(1.0, max(-1.0, score))
            if score > 1.0 - 1e-12:
                score = 1.0
            elif score < 1e-12 - 1.0:
                score = -1.0
        if score >= th.theta_hi:
            cls = TriState.SIMILAR
        elif score <= th.theta_lo:
            cls = TriState.DISSIMILAR
        else:
            cls = TriState.UNCERTAIN
        key = (a, b) if a < b else (b, a)
        out[key] = cls
    return out


# --- betweenness oracle: exhaustive simple-path enumeration ---


def exhaustive_betweenness(adjacency: dict) -> dict:
    nodes = list(adjacency)
    score = {v: 0.0 for v in nodes}
    for s, t in combinations(nodes, 2):
        paths: list[list] = []

        def extend(node, visited, path):
            if node == t:
                paths.append(path[:])
                return
            for nxt in adjacency[node]:
                if nxt not in visited:
                    visited.add(nxt)
                    path.append(nxt)
                    extend(nxt, visited, path)
                    path.pop()
                    visited.remove(nxt)

        extend(s, {s}, [s])
        if not paths:
            continue
        shortest = min(len(p) for p in paths)
        geodesics = [p for p in paths if len(p) == shortest]
        for p in geodesics:
            for v in p[1:-1]:
                score[v] += 1.0 / len(geodesics)
    return score


def random_adjacency(n: int, rng, edge_prob: float = 0.35) -> dict:
    nodes = [f"n{i}" for i in range(n)]
    adjacency = {v: set() for v in nodes}
    for a, b in combinations(nodes, 2):
        if rng.random() < edge_prob:
            adjacency[a].add(b)
            adjacency[b].add(a)
    return adjacency


# --- synthetic corpora ---

_WORDS = [
    f"term{k:03d}" for k in range(400)
]


def perf_corpus(n: int = 3000, seed: int = 0, communities: int = 100) -> Corpus:
    """Vispubdata-shaped synthetic corpus: community-structured citations,
    community-local vocabularies, heavy-tailed citation counts."""
    rng = np.random.default_rng(seed)
    words = [f"w{k:04d}" for k in range(3000)]
    centers = rng.integers(0, len(words) - 60, size=communities)
    articles = []
    ids = [f"P{i:04d}" for i in range(n)]
    authors_pool = [f"Auth {k}" for k in range(800)]
    for i, article_id in enumerate(ids):
        com = i % communities
        pool = words[centers[com] : centers[com] + 60]
        abstract = " ".join(rng.choice(pool, size=25))
        refs = []
        prev = [ids[j] for j in range(max(0, i - 4 * communities), i) if j % communities == com]
        for p in prev[-3:]:
            if rng.random() < 0.7:
                refs.append(p)
        n_auth = int(rng.integers(1, 4))
        auth = list(rng.choice(authors_pool, size=n_auth, replace=False))
        counts = (int(rng.pareto(1.2) * 3), int(rng.pareto(1.2) * 3))
        articles.append(
            make_article(article_id, authors=auth, abstract=abstract, counts=counts, references=refs)
        )
    return make_corpus(articles)


def community_topology_vectors(corpus: Corpus, dim: int = 128, seed: int = 1, communities: int = 100):
    """Unit vectors with planted community structure, shaped like a trained
    topology embedding (stand-in where training time is out of scope)."""
    from aspectsim.embedding.vectors import AspectId, AspectVectors, l2_normalize_rows

    rng = np.random.default_rng(seed)
    n = len(corpus.ids)
    centers = rng.normal(size=(communities, dim))
    rows = np.empty((n, dim))
    for i in range(n):
        rows[i] = centers[i % communities] + 0.9 * rng.normal(size=dim)
    normalized, _ = l2_normalize_rows(rows)
    return AspectVectors(AspectId.TOPOLOGY, corpus.ids, normalized)


def random_corpus(n: int, rng, vocab_slice: int = 40, ref_prob: float = 0.15) -> Corpus:
    """Random articles with overlapping token pools and a sparse citation net."""
    articles = []
    ids = [f"A{i}" for i in range(n)]
    author_pool = [f"Author {chr(65 + k)}" for k in range(16)]
    for i, article_id in enumerate(ids):
        start = rng.integers(0, len(_WORDS) - vocab_slice)
        words = rng.choice(_WORDS[start : start + vocab_slice], size=12, replace=True)
        refs = [other for other in ids[:i] if rng.random() < ref_prob]
        n_authors = int(rng.integers(1, 4))
        authors = list(rng.choice(author_pool, size=n_authors, replace=False))
        articles.append(
            make_article(
                article_id,
                authors=authors,
                year=int(1990 + rng.integers(0, 29)),
                abstract=" ".join(words),
                keywords=[str(words[0])],
                counts=(int(rng.integers(0, 50)), int(rng.integers(0, 50))),
                references=refs,
            )
        )
    return make_corpus(articles)
