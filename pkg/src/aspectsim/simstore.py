"""Pairwise cosine scores, tri-state classification, and sparse pair stores.

Only Similar and Uncertain pairs are materialized; any pair absent from both
sets is Dissimilar. This keeps the store linear in the number of matches
while the pair universe grows quadratically with the corpus.
"""

from __future__ import annotations

import json
import struct
from collections import deque
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from pathlib import Path

import numpy as np
from scipy import sparse

from .corpus import CitationGraph, Corpus
from .embedding.authors import ochiai
from .embedding.vectors import AspectId, AspectVectors
from .errors import DimensionMismatch, FileUnreadable, UnknownId, ZeroVector
from .graphs import pairs_within_two_hops

_MAGIC = b"ASPR"
_VERSION = 1
_TRIPLE = np.dtype([("i", "<u4"), ("j", "<u4"), ("score", "<f8")])


class TriState(str, Enum):
    SIMILAR = "similar"
    DISSIMILAR = "dissimilar"
    UNCERTAIN = "uncertain"


@dataclass(frozen=True)
class AspectThresholds:
    """Two cuts on the cosine scale: >= hi is Similar, <= lo is Dissimilar."""

    theta_hi: float
    theta_lo: float

    def __post_init__(self):
        if not (-1.0 <= self.theta_lo <= self.theta_hi <= 1.0):
            raise ValueError(
                f"need -1 <= theta_lo <= theta_hi <= 1, got ({self.theta_lo}, {self.theta_hi})"
            )


#: Default cuts. Numeric cosines crowd toward 1 because of the shared
#: constant component, hence its tight band near the top of the scale.
DEFAULT_THRESHOLDS = {
    AspectId.TOPOLOGY: AspectThresholds(0.60, 0.40),
    AspectId.TEXT: AspectThresholds(0.50, 0.35),
    AspectId.AUTHORS: AspectThresholds(0.30, 0.15),
    AspectId.NUMERIC: AspectThresholds(0.95, 0.85),
}


class Thresholds:
    """Per-aspect threshold table, JSON-configurable."""

    def __init__(self, per_aspect=None):
        table = dict(DEFAULT_THRESHOLDS)
        for aspect, value in (per_aspect or {}).items():
            aspect = AspectId(aspect)
            if not isinstance(value, AspectThresholds):
                value = AspectThresholds(float(value[0]), float(value[1]))
            table[aspect] = value
        self.per_aspect = table

    def for_aspect(self, aspect) -> AspectThresholds:
        return self.per_aspect[AspectId(aspect)]

    def to_dict(self) -> dict:
        return {
            a.value: {"theta_hi": t.theta_hi, "theta_lo": t.theta_lo}
            for a, t in self.per_aspect.items()
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Thresholds":
        table = {}
        for aspect, entry in data.items():
            if isinstance(entry, dict):
                table[aspect] = AspectThresholds(entry["theta_hi"], entry["theta_lo"])
            else:
                table[aspect] = AspectThresholds(entry[0], entry[1])
        return cls(table)

    @classmethod
    def from_json_file(cls, path) -> "Thresholds":
        path = Path(path)
        if not path.exists():
            raise FileUnreadable(f"no such file: {path}")
        return cls.from_dict(json.loads(path.read_text(encoding="utf-8")))


def pair_key(a: str, b: str) -> tuple[str, str]:
    """Canonical unordered pair: lexicographically smaller id first."""
    return (a, b) if a < b else (b, a)


_SNAP = 1e-12


def snap_scores(values):
    """Clamp scores into [-1, 1] and pull values within 1e-12 of the ends
    onto them, so identical vectors score exactly 1 at any threshold."""
    values = np.clip(values, -1.0, 1.0)
    values = np.where(values > 1.0 - _SNAP, 1.0, values)
    values = np.where(values < _SNAP - 1.0, -1.0, values)
    return values


def cosine(u, v) -> float:
    """dot(u, v) / (|u| |v|), clamped to [-1, 1] against rounding."""
    u = np.asarray(u, dtype=np.float64).ravel()
    v = np.asarray(v, dtype=np.float64).ravel()
    if u.shape != v.shape:
        raise DimensionMismatch(f"vector lengths differ: {u.shape[0]} vs {v.shape[0]}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ZeroVector("cosine undefined for a zero vector")
    return float(snap_scores(np.dot(u, v) / (nu * nv)))


def classify(score: float, thresholds: AspectThresholds) -> TriState:
    """Similar iff score >= theta_hi, Dissimilar iff score <= theta_lo, else
    Uncertain. Similar wins the degenerate theta_hi == theta_lo == score tie."""
    if score >= thresholds.theta_hi:
        return TriState.SIMILAR
    if score <= thresholds.theta_lo:
        return TriState.DISSIMILAR
    return TriState.UNCERTAIN


class AspectPairStore:
    """Sparse classification result for one aspect.

    ``similar`` and ``uncertain`` map canonical pairs to scores; everything
    else is Dissimilar. ``mode`` records whether classes came from embedding
    thresholds or from the exact structural override.
    """

    def __init__(self, aspect, ids, similar, uncertain, thresholds: AspectThresholds, mode="embedding"):
        self.aspect = AspectId(aspect)
        self.ids: tuple[str, ...] = tuple(ids)
        self.similar: dict[tuple[str, str], float] = {pair_key(*k): v for k, v in dict(similar).items()}
        self.uncertain: dict[tuple[str, str], float] = {pair_key(*k): v for k, v in dict(uncertain).items()}
        self.thresholds = thresholds
        self.mode = mode
        overlap = self.similar.keys() & self.uncertain.keys()
        if overlap:
            raise ValueError(f"pairs classified twice: {sorted(overlap)[:3]}")

    @property
    def n(self) -> int:
        return len(self.ids)

    @property
    def total_pairs(self) -> int:
        return self.n * (self.n - 1) // 2

    def counts(self) -> dict[str, int]:
        similar = len(self.similar)
        uncertain = len(self.uncertain)
        return {
            "similar": similar,
            "uncertain": uncertain,
            "dissimilar": self.total_pairs - similar - uncertain,
        }

    def class_of(self, a: str, b: str) -> TriState:
        key = pair_key(a, b)
        if key in self.similar:
            return TriState.SIMILAR
        if key in self.uncertain:
            return TriState.UNCERTAIN
        return TriState.DISSIMILAR

    def stored_score(self, a: str, b: str) -> float | None:
        key = pair_key(a, b)
        if key in self.similar:
            return self.similar[key]
        return self.uncertain.get(key)


def build_store(
    vectors: AspectVectors,
    thresholds: Thresholds | AspectThresholds,
    block_size: int = 512,
) -> AspectPairStore:
    """Classify all unordered pairs for one aspect.

    Scores come from blocked matrix products over the L2-normalized rows, so
    each tile stays cache-resident; sentinel rows are zero and thus score 0
    against everything automatically.
    """
    if isinstance(thresholds, Thresholds):
        th = thresholds.for_aspect(vectors.aspect)
    else:
        th = thresholds
    matrix = vectors.matrix
    n = len(vectors.ids)
    ids = vectors.ids
    similar: dict[tuple[str, str], float] = {}
    uncertain: dict[tuple[str, str], float] = {}

    transposed = matrix.T if not sparse.issparse(matrix) else sparse.csr_matrix(matrix).T
    columns = np.arange(n)[None, :]
    for start in range(0, n, block_size):
        stop = min(start + block_size, n)
        tile = matrix[start:stop] @ transposed
        if sparse.issparse(tile):
            tile = np.asarray(tile.todense())
        tile = snap_scores(tile)
        # Only the strict upper triangle matters for unordered pairs.
        upper = columns > np.arange(start, stop)[:, None]
        for table, mask in (
            (similar, (tile >= th.theta_hi) & upper),
            (uncertain, (tile > th.theta_lo) & (tile < th.theta_hi) & upper),
        ):
            for local_i, j in zip(*np.nonzero(mask)):
                table[pair_key(ids[start + local_i], ids[j])] = float(tile[local_i, j])
    return AspectPairStore(vectors.aspect, ids, similar, uncertain, th, mode="embedding")


@dataclass
class AspectRecord:
    score: float
    tri_state: TriState


@dataclass
class PairRecord:
    """Full per-aspect detail for one unordered article pair."""

    pair: tuple[str, str]
    aspects: dict[AspectId, AspectRecord]


class VectorPairScorer:
    """Recomputes cosine scores from aspect vectors; sentinel rows score 0."""

    def __init__(self, vectors: dict[AspectId, AspectVectors]):
        self.vectors = vectors

    def aspects(self):
        return self.vectors.keys()

    def score(self, aspect: AspectId, a: str, b: str) -> float:
        av = self.vectors[aspect]
        if av.is_sentinel(a) or av.is_sentinel(b):
            return 0.0
        return cosine(av.vector(a), av.vector(b))


def pair_record(a: str, b: str, stores: dict[AspectId, AspectPairStore], scorer) -> PairRecord:
    """Per-aspect score and class for a pair; symmetric in its arguments.

    Stored pairs report their stored score; Dissimilar pairs get their score
    recomputed through ``scorer``.
    """
    if a == b:
        raise ValueError("a pair needs two distinct articles")
    key = pair_key(a, b)
    records: dict[AspectId, AspectRecord] = {}
    for aspect, store in stores.items():
        if key[0] not in store.ids or key[1] not in store.ids:
            missing = key[0] if key[0] not in store.ids else key[1]
            raise UnknownId(missing)
        stored = store.stored_score(*key)
        if stored is not None:
            records[aspect] = AspectRecord(stored, store.class_of(*key))
        else:
            records[aspect] = AspectRecord(scorer.score(aspect, *key), TriState.DISSIMILAR)
    return PairRecord(pair=key, aspects=records)


class ExactTopologyScorer:
    """Score for the exact topology override: 1/d for graph distance d, 0 if
    unreachable. Matches the override's distance-based class semantics."""

    def __init__(self, graph: CitationGraph):
        self.adjacency = graph.adjacency

    def _distances(self, source: str) -> dict[str, int]:
        seen = {source: 0}
        queue = deque([source])
        while queue:
            node = queue.popleft()
            for nxt in self.adjacency[node]:
                if nxt not in seen:
                    seen[nxt] = seen[node] + 1
                    queue.append(nxt)
        return seen

    def score(self, a: str, b: str) -> float:
        if a not in self.adjacency or b not in self.adjacency:
            raise UnknownId(a if a not in self.adjacency else b)
        if a == b:
            return 1.0
        distance = self._distances(a).get(b)
        return 0.0 if distance is None else 1.0 / distance

    def score_all(self, a: str, ids) -> np.ndarray:
        if a not in self.adjacency:
            raise UnknownId(a)
        distances = self._distances(a)
        out = np.zeros(len(ids))
        for k, other in enumerate(ids):
            d = distances.get(other)
            if other == a:
                out[k] = 1.0
            elif d:
                out[k] = 1.0 / d
        return out


class ExactAuthorsScorer:
    """Ochiai coefficient of the two author sets."""

    def __init__(self, author_sets: dict[str, set]):
        self.sets = author_sets

    def score(self, a: str, b: str) -> float:
        if a not in self.sets or b not in self.sets:
            raise UnknownId(a if a not in self.sets else b)
        return ochiai(self.sets[a], self.sets[b])

    def score_all(self, a: str, ids) -> np.ndarray:
        if a not in self.sets:
            raise UnknownId(a)
        mine = self.sets[a]
        return np.array([ochiai(mine, self.sets[other]) for other in ids])


@dataclass
class ExactOverrides:
    """Structural replacement classes for Topology and Authors.

    Topology: Similar iff undirected citation distance <= 2, otherwise
    Dissimilar. Authors: Similar iff the pair shares at least one author.
    There is no Uncertain class in exact mode.
    """

    stores: dict[AspectId, AspectPairStore]
    scorers: dict[AspectId, object]


def exact_mode_override(graph: CitationGraph, corpus: Corpus, thresholds: Thresholds | None = None) -> ExactOverrides:
    thresholds = thresholds or Thresholds()
    direct = graph.undirected_edges()
    two_hop = pairs_within_two_hops(graph.adjacency)
    topo_similar = {}
    for pair in two_hop:
        topo_similar[pair] = 1.0 if pair in direct else 0.5
    topo_store = AspectPairStore(
        AspectId.TOPOLOGY,
        corpus.ids,
        topo_similar,
        {},
        thresholds.for_aspect(AspectId.TOPOLOGY),
        mode="exact",
    )

    author_sets = {a.id: set(a.authors) for a in corpus.articles}
    authors_similar = {}
    for _, members in sorted(corpus.author_index.items()):
        for a, b in combinations(sorted(members), 2):
            key = pair_key(a, b)
            if key not in authors_similar:
                authors_similar[key] = ochiai(author_sets[key[0]], author_sets[key[1]])
    authors_store = AspectPairStore(
        AspectId.AUTHORS,
        corpus.ids,
        authors_similar,
        {},
        thresholds.for_aspect(AspectId.AUTHORS),
        mode="exact",
    )

    return ExactOverrides(
        stores={AspectId.TOPOLOGY: topo_store, AspectId.AUTHORS: authors_store},
        scorers={
            AspectId.TOPOLOGY: ExactTopologyScorer(graph),
            AspectId.AUTHORS: ExactAuthorsScorer(author_sets),
        },
    )


def _pack_str(value: str) -> bytes:
    raw = value.encode("utf-8")
    return struct.pack("<H", len(raw)) + raw


def save_store(store: AspectPairStore, path: str | Path) -> None:
    """Versioned binary pair file plus a JSON sidecar of counts and cuts."""
    path = Path(path)
    index = {article_id: i for i, article_id in enumerate(store.ids)}

    def triples(table):
        entries = []
        for pair, score in table.items():
            i, j = index[pair[0]], index[pair[1]]
            if i > j:
                i, j = j, i
            entries.append((i, j, score))
        entries.sort()
        return np.array(entries, dtype=_TRIPLE) if entries else np.empty(0, dtype=_TRIPLE)

    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<H", _VERSION))
        fh.write(_pack_str(store.aspect.value))
        fh.write(_pack_str(store.mode))
        fh.write(struct.pack("<dd", store.thresholds.theta_hi, store.thresholds.theta_lo))
        fh.write(struct.pack("<I", store.n))
        for article_id in store.ids:
            fh.write(_pack_str(article_id))
        similar = triples(store.similar)
        uncertain = triples(store.uncertain)
        fh.write(struct.pack("<II", len(similar), len(uncertain)))
        fh.write(similar.tobytes())
        fh.write(uncertain.tobytes())

    sidecar = {
        "aspect": store.aspect.value,
        "mode": store.mode,
        "version": _VERSION,
        "theta_hi": store.thresholds.theta_hi,
        "theta_lo": store.thresholds.theta_lo,
        "n": store.n,
        "counts": store.counts(),
    }
    Path(str(path) + ".json").write_text(json.dumps(sidecar, indent=2), encoding="utf-8")


def load_store(path: str | Path) -> AspectPairStore:
    path = Path(path)
    if not path.exists():
        raise FileUnreadable(f"no such file: {path}")
    blob = path.read_bytes()
    if blob[:4] != _MAGIC:
        raise FileUnreadable(f"{path}: bad magic bytes")
    offset = 4
    (version,) = struct.unpack_from("<H", blob, offset)
    offset += 2
    if version != _VERSION:
        raise FileUnreadable(f"{path}: unsupported version {version}")

    def unpack_str(off):
        (length,) = struct.unpack_from("<H", blob, off)
        off += 2
        return blob[off : off + length].decode("utf-8"), off + length

    aspect, offset = unpack_str(offset)
    mode, offset = unpack_str(offset)
    theta_hi, theta_lo = struct.unpack_from("<dd", blob, offset)
    offset += 16
    (n,) = struct.unpack_from("<I", blob, offset)
    offset += 4
    ids = []
    for _ in range(n):
        article_id, offset = unpack_str(offset)
        ids.append(article_id)
    n_similar, n_uncertain = struct.unpack_from("<II", blob, offset)
    offset += 8
    similar_rows = np.frombuffer(blob, dtype=_TRIPLE, count=n_similar, offset=offset)
    offset += n_similar * _TRIPLE.itemsize
    uncertain_rows = np.frombuffer(blob, dtype=_TRIPLE, count=n_uncertain, offset=offset)

    similar = {(ids[int(r["i"])], ids[int(r["j"])]): float(r["score"]) for r in similar_rows}
    uncertain = {(ids[int(r["i"])], ids[int(r["j"])]): float(r["score"]) for r in uncertain_rows}
    return AspectPairStore(
        aspect,
        ids,
        similar,
        uncertain,
        AspectThresholds(theta_hi, theta_lo),
        mode=mode,
    )
