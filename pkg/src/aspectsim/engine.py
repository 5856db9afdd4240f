"""Pipeline artifact management and the immutable serving state.

Artifacts live in one directory per corpus snapshot:

    corpus.json          canonical corpus (checksummed)
    ingest-report.json   row-level validation report
    manifest.json        per-stage record with the corpus checksum
    vectors-<aspect>.npz per-aspect embeddings
    text-fit.json        TF-IDF fit state for abstract upload
    store-<aspect>.bin   pair store (plus .json sidecar)
    thresholds.json      effective threshold table

Every stage stamps the corpus checksum it was built from; loading refuses to
assemble artifacts from different snapshots.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import (
    CitationGraph,
    Corpus,
    build_citation_graph,
    corpus_checksum,
    load_corpus,
)
from .embedding import (
    ASPECTS,
    AspectId,
    AspectVectors,
    TextEmbedder,
    TopologyParams,
    embed_authors,
    embed_external_abstract,
    embed_numeric,
    embed_text,
    embed_topology,
    load_vectors,
    save_vectors,
)
from .errors import ChecksumMismatch, MissingArtifact, UnknownId
from .patterns import (
    Cluster as PatternCluster,
    ClusterResult,
    CriteriaSpec,
    SimilarityNetwork,
    TargetReport,
    cluster,
    evaluate_criteria,
    match_external_abstract,
    similarity_network,
    target_to_all,
    track,
)
from .simstore import (
    AspectPairStore,
    Thresholds,
    build_store,
    exact_mode_override,
    load_store,
    save_store,
    snap_scores,
)

MANIFEST = "manifest.json"
CORPUS_FILE = "corpus.json"
TEXT_FIT_FILE = "text-fit.json"
THRESHOLDS_FILE = "thresholds.json"


def vectors_file(aspect: AspectId) -> str:
    return f"vectors-{aspect.value}.npz"


def store_file(aspect: AspectId) -> str:
    return f"store-{aspect.value}.bin"


class Manifest:
    """Stage ledger keeping every artifact tied to one corpus snapshot."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self.data: dict = {"stages": {}}
        if self.path.exists():
            self.data = json.loads(self.path.read_text(encoding="utf-8"))

    def record(self, stage: str, checksum: str, **extra) -> None:
        self.data["stages"][stage] = {
            "corpus_checksum": checksum,
            "created": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            **extra,
        }
        self.path.write_text(json.dumps(self.data, indent=2), encoding="utf-8")

    def require(self, stage: str, checksum: str | None = None) -> dict:
        entry = self.data["stages"].get(stage)
        if entry is None:
            raise MissingArtifact(f"stage {stage!r} has not been run in {self.path.parent}")
        if checksum is not None and entry["corpus_checksum"] != checksum:
            raise ChecksumMismatch(
                f"stage {stage!r} was built from a different corpus snapshot"
            )
        return entry


class EngineScorer:
    """Resolves per-aspect pair scores during queries.

    Embedding aspects score through their vectors (sentinels give 0);
    exact-mode aspects use their structural scorers.
    """

    def __init__(
        self,
        ids,
        vectors: dict[AspectId, AspectVectors],
        exact_scorers: dict[AspectId, object] | None = None,
    ):
        self.ids = tuple(ids)
        self.vectors = vectors
        self.exact = exact_scorers or {}

    def score(self, aspect: AspectId, a: str, b: str) -> float:
        if aspect in self.exact:
            return float(self.exact[aspect].score(a, b))
        av = self.vectors[aspect]
        if av.is_sentinel(a) or av.is_sentinel(b):
            return 0.0
        va = av.vector(a)
        vb = av.vector(b)
        return float(snap_scores(np.dot(va, vb)))

    def score_all(self, aspect: AspectId, a: str) -> np.ndarray:
        if aspect in self.exact:
            return self.exact[aspect].score_all(a, self.ids)
        av = self.vectors[aspect]
        if av.is_sentinel(a):
            return np.zeros(len(self.ids))
        row = av.vector(a)
        scores = np.asarray(av.matrix @ row).ravel()
        return snap_scores(scores)


class StoreBackedScorer:
    """Serves stored scores first and falls back to recomputation.

    Similar and Uncertain pairs are materialized in the stores, so most query
    scoring is a dictionary lookup; only Dissimilar pairs pay for a fresh
    cosine (or structural score in exact mode).
    """

    def __init__(self, stores: dict[AspectId, AspectPairStore], fallback: EngineScorer):
        self.stores = stores
        self.fallback = fallback

    def score(self, aspect: AspectId, a: str, b: str) -> float:
        stored = self.stores[aspect].stored_score(a, b)
        if stored is not None:
            return stored
        return self.fallback.score(aspect, a, b)

    def score_all(self, aspect: AspectId, a: str) -> np.ndarray:
        return self.fallback.score_all(aspect, a)


@dataclass
class EngineState:
    """Everything a serving process needs, built from one corpus snapshot."""

    corpus: Corpus
    graph: CitationGraph
    vectors: dict[AspectId, AspectVectors]
    stores: dict[AspectId, AspectPairStore]
    text_fit: TextEmbedder | None
    thresholds: Thresholds
    modes: dict[AspectId, str]
    checksum: str
    scorer: EngineScorer

    def __post_init__(self):
        self.pair_scorer = StoreBackedScorer(self.stores, self.scorer)

    def run_query(
        self,
        criteria: CriteriaSpec,
        keyword: str | None = None,
        author: str | None = None,
    ) -> ClusterResult:
        match = evaluate_criteria(criteria, self.stores)
        tracked = None
        if keyword or author:
            tracked = track(keyword, author, self.corpus)
        return cluster(match, self.corpus.ids, scorer=self.pair_scorer, tracked=tracked)

    def run_network(self, criteria: CriteriaSpec, members) -> SimilarityNetwork:
        for member in members:
            if member not in self.corpus:
                raise UnknownId(member)
        member_set = set(members)
        match = evaluate_criteria(criteria, self.stores)
        edges = sorted(p for p in match.pairs if p[0] in member_set and p[1] in member_set)
        sub = PatternCluster(members=tuple(sorted(member_set)), intra_edges=edges)
        return similarity_network(sub, self.stores, self.pair_scorer)

    def run_target(self, criteria: CriteriaSpec, target: str) -> TargetReport:
        return target_to_all(target, criteria, self.stores, self.pair_scorer, self.corpus)

    def run_upload_text(self, text: str):
        vector = embed_external_abstract(text, self.text_fit)
        return match_external_abstract(
            vector,
            self.vectors[AspectId.TEXT],
            self.thresholds.for_aspect(AspectId.TEXT),
        )

    def run_upload_vector(self, vector: np.ndarray):
        norm = np.linalg.norm(vector)
        if norm > 0:
            vector = np.asarray(vector, dtype=np.float64) / norm
        return match_external_abstract(
            vector,
            self.vectors[AspectId.TEXT],
            self.thresholds.for_aspect(AspectId.TEXT),
        )

    def run_search(self, keyword: str | None, author: str | None) -> set[str]:
        return track(keyword, author, self.corpus)

    def meta(self) -> dict:
        return {
            "articles": len(self.corpus),
            "span": list(self.corpus.span),
            "corpus_checksum": self.checksum,
            "thresholds": self.thresholds.to_dict(),
            "modes": {a.value: m for a, m in self.modes.items()},
            "counts": {a.value: s.counts() for a, s in self.stores.items()},
            "upload_supported": self.text_fit is not None,
        }


def build_engine(
    corpus: Corpus,
    thresholds: Thresholds | None = None,
    topology_params: TopologyParams | None = None,
    text_mode: str = "builtin",
    text_import_path=None,
    exact_mode: bool = False,
) -> EngineState:
    """Build a serving state in memory, without pipeline artifacts.

    In exact mode the topology aspect is not trained at all; its classes and
    scores come from the structural override.
    """
    thresholds = thresholds or Thresholds()
    graph = build_citation_graph(corpus)
    checksum = corpus_checksum(corpus)

    vectors: dict[AspectId, AspectVectors] = {}
    text_vectors, text_fit = embed_text(corpus, mode=text_mode, import_path=text_import_path)
    vectors[AspectId.TEXT] = text_vectors
    vectors[AspectId.NUMERIC] = embed_numeric(corpus)
    if not exact_mode:
        vectors[AspectId.AUTHORS] = embed_authors(corpus)
        vectors[AspectId.TOPOLOGY] = embed_topology(graph, topology_params)

    stores = {aspect: build_store(v, thresholds) for aspect, v in vectors.items()}
    exact_scorers: dict[AspectId, object] = {}
    if exact_mode:
        overrides = exact_mode_override(graph, corpus, thresholds)
        stores.update(overrides.stores)
        exact_scorers = overrides.scorers

    modes = {a: ("exact" if a in exact_scorers else "embedding") for a in ASPECTS}
    return EngineState(
        corpus=corpus,
        graph=graph,
        vectors=vectors,
        stores=stores,
        text_fit=text_fit,
        thresholds=thresholds,
        modes=modes,
        checksum=checksum,
        scorer=EngineScorer(corpus.ids, vectors, exact_scorers),
    )


def run_embed_stage(
    workdir: str | Path,
    aspects=ASPECTS,
    topology_params: TopologyParams | None = None,
    text_mode: str = "builtin",
    text_import_path=None,
) -> dict[AspectId, AspectVectors]:
    """Embed the requested aspects and persist them with provenance."""
    workdir = Path(workdir)
    corpus, checksum = _load_corpus_artifact(workdir)
    manifest = Manifest(workdir / MANIFEST)
    manifest.require("ingest", checksum)

    produced: dict[AspectId, AspectVectors] = {}
    text_fit = None
    for aspect in aspects:
        aspect = AspectId(aspect)
        if aspect is AspectId.TOPOLOGY:
            graph = build_citation_graph(corpus)
            vectors = embed_topology(graph, topology_params)
        elif aspect is AspectId.TEXT:
            vectors, text_fit = embed_text(corpus, mode=text_mode, import_path=text_import_path)
        elif aspect is AspectId.AUTHORS:
            vectors = embed_authors(corpus)
        else:
            vectors = embed_numeric(corpus)
        vectors.meta["corpus_checksum"] = checksum
        save_vectors(vectors, workdir / vectors_file(aspect))
        produced[aspect] = vectors

    if text_fit is not None:
        (workdir / TEXT_FIT_FILE).write_text(
            json.dumps(text_fit.to_state()), encoding="utf-8"
        )
    manifest.record(
        "embed",
        checksum,
        aspects=[AspectId(a).value for a in aspects],
        text_mode=text_mode,
        seed=(topology_params.rng_seed if topology_params else TopologyParams().rng_seed),
    )
    return produced


def run_classify_stage(
    workdir: str | Path,
    thresholds: Thresholds | None = None,
    exact_mode: bool = False,
) -> dict[AspectId, AspectPairStore]:
    """Build and persist the four pair stores (exact overrides on request)."""
    workdir = Path(workdir)
    corpus, checksum = _load_corpus_artifact(workdir)
    manifest = Manifest(workdir / MANIFEST)
    manifest.require("embed", checksum)
    thresholds = thresholds or Thresholds()

    overrides = None
    if exact_mode:
        graph = build_citation_graph(corpus)
        overrides = exact_mode_override(graph, corpus, thresholds)

    stores: dict[AspectId, AspectPairStore] = {}
    for aspect in ASPECTS:
        if overrides is not None and aspect in overrides.stores:
            stores[aspect] = overrides.stores[aspect]
            continue
        vec_path = workdir / vectors_file(aspect)
        if not vec_path.exists():
            raise MissingArtifact(f"vectors for aspect {aspect.value!r} not found; run embed")
        vectors = load_vectors(vec_path)
        if vectors.meta.get("corpus_checksum") != checksum:
            raise ChecksumMismatch(f"vectors for {aspect.value!r} match a different corpus")
        stores[aspect] = build_store(vectors, thresholds)
    for aspect, store in stores.items():
        save_store(store, workdir / store_file(aspect))

    (workdir / THRESHOLDS_FILE).write_text(
        json.dumps(thresholds.to_dict(), indent=2), encoding="utf-8"
    )
    manifest.record("classify", checksum, exact_mode=exact_mode)
    return stores


def load_engine(workdir: str | Path, exact_mode: bool = False) -> EngineState:
    """Assemble the serving state, verifying checksum stamps across stages."""
    workdir = Path(workdir)
    corpus, checksum = _load_corpus_artifact(workdir)
    manifest = Manifest(workdir / MANIFEST)
    manifest.require("ingest", checksum)
    manifest.require("classify", checksum)
    graph = build_citation_graph(corpus)

    thresholds = Thresholds()
    th_path = workdir / THRESHOLDS_FILE
    if th_path.exists():
        thresholds = Thresholds.from_json_file(th_path)

    vectors: dict[AspectId, AspectVectors] = {}
    for aspect in ASPECTS:
        path = workdir / vectors_file(aspect)
        if path.exists():
            loaded = load_vectors(path)
            if loaded.meta.get("corpus_checksum") != checksum:
                raise ChecksumMismatch(f"vectors for {aspect.value!r} match a different corpus")
            vectors[aspect] = loaded

    stores: dict[AspectId, AspectPairStore] = {}
    for aspect in ASPECTS:
        path = workdir / store_file(aspect)
        if not path.exists():
            raise MissingArtifact(f"store for aspect {aspect.value!r} not found; run classify")
        stores[aspect] = load_store(path)

    text_fit = None
    fit_path = workdir / TEXT_FIT_FILE
    if fit_path.exists():
        text_fit = TextEmbedder.from_state(json.loads(fit_path.read_text(encoding="utf-8")))

    exact_scorers: dict[AspectId, object] = {}
    if exact_mode:
        overrides = exact_mode_override(graph, corpus, thresholds)
        stores.update(overrides.stores)
        exact_scorers = overrides.scorers
    else:
        # Stores persisted in exact mode keep their structural semantics.
        needed = [a for a in stores if stores[a].mode == "exact"]
        if needed:
            overrides = exact_mode_override(graph, corpus, thresholds)
            exact_scorers = {a: overrides.scorers[a] for a in needed if a in overrides.scorers}

    for aspect in ASPECTS:
        if aspect not in exact_scorers and aspect not in vectors:
            raise MissingArtifact(
                f"aspect {aspect.value!r} has neither vectors nor an exact override"
            )

    modes = {a: ("exact" if a in exact_scorers else "embedding") for a in ASPECTS}
    scorer = EngineScorer(corpus.ids, vectors, exact_scorers)
    return EngineState(
        corpus=corpus,
        graph=graph,
        vectors=vectors,
        stores=stores,
        text_fit=text_fit,
        thresholds=thresholds,
        modes=modes,
        checksum=checksum,
        scorer=scorer,
    )


def _load_corpus_artifact(workdir: Path) -> tuple[Corpus, str]:
    corpus_path = workdir / CORPUS_FILE
    if not corpus_path.exists():
        raise MissingArtifact(f"{corpus_path} not found; run ingest first")
    corpus, _ = load_corpus(corpus_path, fmt="json")
    return corpus, corpus_checksum(corpus)
