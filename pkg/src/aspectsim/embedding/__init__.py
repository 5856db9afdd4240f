"""Per-aspect article embedders and the shared vector container."""

from .authors import AuthorsEmbedder, embed_authors, ochiai
from .numeric import NumericEmbedder, embed_numeric
from .text import TextEmbedder, embed_external_abstract, embed_text
from .topology import TopologyEmbedder, TopologyParams, embed_topology
from .vectors import (
    ASPECTS,
    AspectId,
    AspectVectors,
    l2_normalize_rows,
    load_vectors,
    read_imported_vectors,
    save_vectors,
)

__all__ = [
    "ASPECTS",
    "AspectId",
    "AspectVectors",
    "AuthorsEmbedder",
    "NumericEmbedder",
    "TextEmbedder",
    "TopologyEmbedder",
    "TopologyParams",
    "embed_authors",
    "embed_external_abstract",
    "embed_numeric",
    "embed_text",
    "embed_topology",
    "l2_normalize_rows",
    "load_vectors",
    "ochiai",
    "read_imported_vectors",
    "save_vectors",
]
