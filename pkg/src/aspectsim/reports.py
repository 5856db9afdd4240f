"""Batch reports reproducing the two exploration walkthroughs.

The citation-link report measures intra-set citation coverage, the
self-citation rate, and text-similar pairs with no citation link (split by
author similarity). The topic report counts keyword-tracked articles and
summarizes the tracked clusters under text similarity.
"""

from __future__ import annotations

from .embedding.vectors import AspectId
from .engine import EngineState
from .patterns import Choice, CriteriaSpec, TriState, coverage_stats, evaluate_criteria


def use_case_1(engine: EngineState) -> dict:
    """Citation link analysis over the whole corpus."""
    universe = engine.corpus.ids

    proximity = evaluate_criteria(CriteriaSpec(topology=Choice.YES), engine.stores)
    proximity_stats = coverage_stats(proximity, universe)

    self_cite = evaluate_criteria(
        CriteriaSpec(topology=Choice.YES, authors=Choice.YES), engine.stores
    )
    self_cite_stats = coverage_stats(self_cite, universe)

    missing = evaluate_criteria(
        CriteriaSpec(text=Choice.YES, topology=Choice.NO), engine.stores
    )
    authors_store = engine.stores[AspectId.AUTHORS]
    pairs = []
    for a, b in sorted(missing.pairs):
        text_score = engine.stores[AspectId.TEXT].stored_score(a, b)
        authors_class = authors_store.class_of(a, b)
        pairs.append(
            {
                "pair": [a, b],
                "text_score": text_score,
                "authors_class": authors_class.value,
                "authors_score": engine.scorer.score(AspectId.AUTHORS, a, b),
            }
        )
    pairs.sort(key=lambda p: (-(p["text_score"] or 0.0), p["pair"]))
    author_similar = sum(1 for p in pairs if p["authors_class"] == TriState.SIMILAR.value)

    return {
        "intra_set_citation": {
            "covered_fraction": proximity_stats.covered_fraction,
            "covered_articles": proximity_stats.covered_articles,
            "pair_count": proximity_stats.pair_count,
        },
        "self_citation": {
            "covered_fraction": self_cite_stats.covered_fraction,
            "covered_articles": self_cite_stats.covered_articles,
            "pair_count": self_cite_stats.pair_count,
        },
        "missing_citations": {
            "pair_count": len(pairs),
            "author_similar": author_similar,
            "author_dissimilar": len(pairs) - author_similar,
            "pairs": pairs,
        },
        "modes": {a.value: m for a, m in engine.modes.items()},
        "articles": len(universe),
    }


def use_case_2(engine: EngineState, keyword: str = "clustering") -> dict:
    """Keyword tracking plus text-similarity clusters over the tracked set."""
    tracked = engine.run_search(keyword=keyword, author=None)
    result = engine.run_query(CriteriaSpec(text=Choice.YES), keyword=keyword)
    clusters = [
        {
            "size": c.size,
            "members": list(c.members),
            "avg_score": c.avg_score,
            "tracked_fraction": c.tracked_fraction,
        }
        for c in result.clusters
    ]
    return {
        "keyword": keyword,
        "tracked_count": len(tracked),
        "clusters": clusters,
        "stats": result.stats.to_dict(),
        "articles": len(engine.corpus),
    }
