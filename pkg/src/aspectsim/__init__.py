"""Aspect-wise similarity classification and exploration for citation corpora."""

from .corpus import (
    Article,
    CitationGraph,
    Corpus,
    build_citation_graph,
    load_corpus,
    save_corpus,
    tokenize,
)
from .embedding import (
    ASPECTS,
    AspectId,
    AspectVectors,
    TopologyParams,
    embed_authors,
    embed_external_abstract,
    embed_numeric,
    embed_text,
    embed_topology,
)
from .engine import EngineState, load_engine
from .patterns import (
    Choice,
    CriteriaSpec,
    cluster,
    coverage_stats,
    evaluate_criteria,
    match_external_abstract,
    similarity_network,
    target_to_all,
    track,
)
from .simstore import (
    AspectPairStore,
    AspectThresholds,
    Thresholds,
    TriState,
    build_store,
    classify,
    cosine,
    exact_mode_override,
    pair_record,
)

__version__ = "0.1.0"

__all__ = [
    "ASPECTS",
    "Article",
    "AspectId",
    "AspectPairStore",
    "AspectThresholds",
    "AspectVectors",
    "Choice",
    "CitationGraph",
    "Corpus",
    "CriteriaSpec",
    "EngineState",
    "Thresholds",
    "TopologyParams",
    "TriState",
    "build_citation_graph",
    "build_store",
    "classify",
    "cluster",
    "cosine",
    "coverage_stats",
    "embed_authors",
    "embed_external_abstract",
    "embed_numeric",
    "embed_text",
    "embed_topology",
    "evaluate_criteria",
    "exact_mode_override",
    "load_corpus",
    "load_engine",
    "match_external_abstract",
    "pair_record",
    "save_corpus",
    "similarity_network",
    "target_to_all",
    "tokenize",
    "track",
]
