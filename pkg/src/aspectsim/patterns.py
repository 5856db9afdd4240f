"""Criteria queries and every analytic the exploration views consume.

All operations are pure functions over immutable stores, so any number of
queries can run concurrently. Scores are resolved through a scorer object
(see :class:`aspectsim.simstore.VectorPairScorer`) exposing ``score(aspect,
a, b)`` and, optionally, ``score_all(aspect, a)`` for one-against-all rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

import numpy as np

from .corpus import Corpus, tokenize
from .embedding.vectors import AspectId, AspectVectors
from .errors import EmptyQuery, NoActiveCriteria, UnknownId
from .graphs import betweenness, connected_components
from .simstore import AspectPairStore, AspectThresholds, TriState, pair_key, snap_scores

BRIDGE_FRACTION = 0.8


class Choice(str, Enum):
    YES = "yes"
    NO = "no"
    INACTIVE = "inactive"


class CriteriaSpec:
    """Per-aspect slider state: YES, NO, or INACTIVE."""

    def __init__(self, choices=None, **by_name):
        table: dict[AspectId, Choice] = {aspect: Choice.INACTIVE for aspect in AspectId}
        merged = dict(choices or {})
        merged.update(by_name)
        for aspect, choice in merged.items():
            table[AspectId(aspect)] = Choice(choice)
        self.choices = table

    def yes_aspects(self) -> list[AspectId]:
        return [a for a, c in self.choices.items() if c is Choice.YES]

    def no_aspects(self) -> list[AspectId]:
        return [a for a, c in self.choices.items() if c is Choice.NO]

    def active(self) -> list[AspectId]:
        return [a for a, c in self.choices.items() if c is not Choice.INACTIVE]

    def __eq__(self, other):
        return isinstance(other, CriteriaSpec) and self.choices == other.choices

    def __repr__(self):
        parts = [f"{a.value}={c.value}" for a, c in self.choices.items() if c is not Choice.INACTIVE]
        return f"CriteriaSpec({', '.join(parts) or 'all inactive'})"

    def to_dict(self) -> dict:
        return {a.value: c.value for a, c in self.choices.items()}


@dataclass
class MatchSet:
    """Pairs satisfying a criteria specification.

    YES requires class Similar, NO requires class Dissimilar; Uncertain
    satisfies neither side.
    """

    criteria: CriteriaSpec
    pairs: set[tuple[str, str]]


def evaluate_criteria(spec: CriteriaSpec, stores: dict[AspectId, AspectPairStore]) -> MatchSet:
    yes = [a for a in spec.yes_aspects() if a in stores]
    no = [a for a in spec.no_aspects() if a in stores]
    if not spec.active():
        raise NoActiveCriteria("at least one aspect must be YES or NO")

    if yes:
        # Intersect the sparse Similar sets, smallest first.
        yes_sorted = sorted(yes, key=lambda a: len(stores[a].similar))
        result = set(stores[yes_sorted[0]].similar)
        for aspect in yes_sorted[1:]:
            result &= stores[aspect].similar.keys()
    else:
        ids = stores[no[0]].ids
        result = {pair_key(a, b) for a, b in combinations(sorted(ids), 2)}
    for aspect in no:
        store = stores[aspect]
        result -= store.similar.keys()
        result -= store.uncertain.keys()
    return MatchSet(criteria=spec, pairs=result)


@dataclass
class CoverageStats:
    pair_count: int
    covered_articles: int
    covered_fraction: float

    def to_dict(self) -> dict:
        return {
            "pair_count": self.pair_count,
            "covered_articles": self.covered_articles,
            "covered_fraction": self.covered_fraction,
        }


def coverage_stats(match: MatchSet, universe) -> CoverageStats:
    """How many articles appear in at least one matched pair."""
    covered: set[str] = set()
    for a, b in match.pairs:
        covered.add(a)
        covered.add(b)
    total = len(universe)
    return CoverageStats(
        pair_count=len(match.pairs),
        covered_articles=len(covered),
        covered_fraction=(len(covered) / total) if total else 0.0,
    )


@dataclass
class Cluster:
    members: tuple[str, ...]
    intra_edges: list[tuple[str, str]]
    avg_score: float = 0.0
    tracked_fraction: float = 0.0

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class ClusterResult:
    criteria: CriteriaSpec
    clusters: list[Cluster]
    unclustered: set[str]
    stats: CoverageStats
    tracked: set[str] | None = None


def edge_strength(criteria: CriteriaSpec, aspect_scores: dict[AspectId, float]) -> float:
    """Strength of one matched pair under the active criteria.

    Mean cosine over YES aspects; when no aspect is YES, mean of
    (1 - cosine) over the NO aspects.
    """
    yes = criteria.yes_aspects()
    if yes:
        return float(np.mean([aspect_scores[a] for a in yes]))
    no = criteria.no_aspects()
    return float(np.mean([1.0 - aspect_scores[a] for a in no]))


def cluster_summary(members_edges, criteria: CriteriaSpec, scorer) -> dict:
    """avg_score and size for one cluster.

    ``members_edges`` is a Cluster or any object with members/intra_edges.
    """
    edges = members_edges.intra_edges
    if edges:
        strengths = [
            edge_strength(criteria, {a: scorer.score(a, u, v) for a in criteria.active()})
            for u, v in edges
        ]
        avg = float(np.mean(strengths))
    else:
        avg = 0.0
    return {"avg_score": avg, "size": len(members_edges.members)}


def cluster(
    match: MatchSet,
    universe,
    scorer=None,
    tracked: set[str] | None = None,
) -> ClusterResult:
    """Connected components (size >= 2) of the matched-pair graph.

    Members of one cluster need not be pairwise matched; they are connected
    by at least one path of matched pairs. Singletons fall into
    ``unclustered``. With ``tracked`` given, only clusters containing at
    least one tracked article are kept and tracked_fraction is populated.
    """
    components = connected_components(match.pairs, universe)
    edges_by_root: dict[frozenset, list] = {}
    member_component: dict[str, int] = {}
    sized = [c for c in components if len(c) >= 2]
    sized.sort(key=lambda c: (-len(c), min(c)))
    for idx, comp in enumerate(sized):
        for m in comp:
            member_component[m] = idx
    edge_lists: list[list[tuple[str, str]]] = [[] for _ in sized]
    for pair in match.pairs:
        edge_lists[member_component[pair[0]]].append(pair)

    clusters = []
    for comp, edges in zip(sized, edge_lists):
        members = tuple(sorted(comp))
        edges.sort()
        frac = (len(comp & tracked) / len(comp)) if tracked is not None else 0.0
        clusters.append(Cluster(members=members, intra_edges=edges, tracked_fraction=frac))

    if tracked is not None:
        clusters = [c for c in clusters if any(m in tracked for m in c.members)]
        kept_members = {m for c in clusters for m in c.members}
        unclustered = {t for t in tracked if t not in member_component} - kept_members
    else:
        unclustered = set(universe) - set(member_component)

    if scorer is not None:
        for c in clusters:
            c.avg_score = cluster_summary(c, match.criteria, scorer)["avg_score"]

    stats = coverage_stats(match, universe)
    return ClusterResult(
        criteria=match.criteria,
        clusters=clusters,
        unclustered=unclustered,
        stats=stats,
        tracked=tracked,
    )


@dataclass
class NetworkNode:
    id: str
    betweenness: float
    bridge: bool


@dataclass
class NetworkEdge:
    pair: tuple[str, str]
    aspects: dict[AspectId, tuple[float, TriState]]


@dataclass
class SimilarityNetwork:
    nodes: list[NetworkNode]
    edges: list[NetworkEdge]
    matrix_order: list[str]


def similarity_network(
    members_edges,
    stores: dict[AspectId, AspectPairStore],
    scorer,
) -> SimilarityNetwork:
    """Intra-cluster similarity links with exact betweenness per node.

    Bridge nodes have strictly positive betweenness within
    BRIDGE_FRACTION of the subgraph maximum. The adjacency-matrix order is
    descending degree, ties by id.
    """
    members = list(members_edges.members)
    edges = list(members_edges.intra_edges)
    adjacency: dict[str, set[str]] = {m: set() for m in members}
    for u, v in edges:
        adjacency[u].add(v)
        adjacency[v].add(u)

    central = betweenness(adjacency)
    peak = max(central.values(), default=0.0)
    nodes = [
        NetworkNode(
            id=m,
            betweenness=central[m],
            bridge=central[m] > 0.0 and central[m] >= BRIDGE_FRACTION * peak,
        )
        for m in sorted(members)
    ]

    def edge_detail(pair):
        detail = {}
        for aspect, store in stores.items():
            stored = store.stored_score(*pair)
            score = stored if stored is not None else scorer.score(aspect, *pair)
            detail[aspect] = (score, store.class_of(*pair))
        return NetworkEdge(pair=pair, aspects=detail)

    order = sorted(members, key=lambda m: (-len(adjacency[m]), m))
    return SimilarityNetwork(
        nodes=nodes,
        edges=[edge_detail(p) for p in sorted(edges)],
        matrix_order=order,
    )


class TargetStatus(str, Enum):
    MATCH = "match"
    NEAR_MISS = "near_miss"
    OTHER = "other"


@dataclass
class TargetEntry:
    id: str
    status: TargetStatus
    failing_aspect: AspectId | None
    aspects: dict[AspectId, tuple[float, TriState]]
    shared_authors: list[str] = field(default_factory=list)
    shared_words: list[str] = field(default_factory=list)
    strength: float = 0.0


@dataclass
class TargetReport:
    target: str
    criteria: CriteriaSpec
    entries: list[TargetEntry]

    def by_status(self, status: TargetStatus) -> list[TargetEntry]:
        return [e for e in self.entries if e.status is status]


def target_to_all(
    target: str,
    spec: CriteriaSpec,
    stores: dict[AspectId, AspectPairStore],
    scorer,
    corpus: Corpus,
) -> TargetReport:
    """Classify every other article against the target under the criteria.

    Match satisfies all active criteria; a near miss violates exactly one.
    Matches and near misses carry co-occurring authors and abstract words.
    Entries are ordered matches, then near misses, each by descending
    strength; the rest follow.
    """
    if target not in corpus:
        raise UnknownId(target)
    if not spec.active():
        raise NoActiveCriteria("at least one aspect must be YES or NO")

    bulk: dict[AspectId, np.ndarray] = {}
    for aspect in stores:
        bulk[aspect] = scorer.score_all(aspect, target)
    index = {article_id: k for k, article_id in enumerate(corpus.ids)}

    target_article = corpus.by_id[target]
    target_authors = set(target_article.authors)
    target_words = corpus.abstract_tokens[target]

    entries = []
    for other in corpus.ids:
        if other == target:
            continue
        detail: dict[AspectId, tuple[float, TriState]] = {}
        for aspect, store in stores.items():
            stored = store.stored_score(target, other)
            score = stored if stored is not None else float(bulk[aspect][index[other]])
            detail[aspect] = (score, store.class_of(target, other))

        violated = []
        for aspect in spec.yes_aspects():
            if detail[aspect][1] is not TriState.SIMILAR:
                violated.append(aspect)
        for aspect in spec.no_aspects():
            if detail[aspect][1] is not TriState.DISSIMILAR:
                violated.append(aspect)

        if not violated:
            status, failing = TargetStatus.MATCH, None
        elif len(violated) == 1:
            status, failing = TargetStatus.NEAR_MISS, violated[0]
        else:
            status, failing = TargetStatus.OTHER, None

        entry = TargetEntry(
            id=other,
            status=status,
            failing_aspect=failing,
            aspects=detail,
            strength=edge_strength(spec, {a: detail[a][0] for a in spec.active()}),
        )
        if status is not TargetStatus.OTHER:
            other_article = corpus.by_id[other]
            entry.shared_authors = sorted(target_authors & set(other_article.authors))
            entry.shared_words = sorted(target_words & corpus.abstract_tokens[other])
        entries.append(entry)

    rank = {TargetStatus.MATCH: 0, TargetStatus.NEAR_MISS: 1, TargetStatus.OTHER: 2}
    entries.sort(key=lambda e: (rank[e.status], -e.strength, e.id))
    return TargetReport(target=target, criteria=spec, entries=entries)


def track(keyword: str | None, author: str | None, corpus: Corpus) -> set[str]:
    """Article ids matching a keyword and/or an author query.

    Keywords match by whole-token equality over title, abstract, and keyword
    tokens (every token of a multi-word query must appear); authors match by
    case-insensitive substring. Both given means intersection.
    """
    if not keyword and not author:
        raise EmptyQuery("supply a keyword and/or an author")

    result: set[str] | None = None
    if keyword:
        tokens = tokenize(keyword)
        matched: set[str] = set()
        if tokens:
            matched = set(corpus.token_index.get(tokens[0], set()))
            for tok in tokens[1:]:
                matched &= corpus.token_index.get(tok, set())
        result = matched
    if author:
        needle = author.lower()
        by_author = {
            article_id
            for name, ids in corpus.author_index.items()
            if needle in name.lower()
            for article_id in ids
        }
        result = by_author if result is None else (result & by_author)
    return result if result is not None else set()


@dataclass
class AbstractMatch:
    id: str
    score: float
    tri_state: TriState


def match_external_abstract(
    vector: np.ndarray,
    text_vectors: AspectVectors,
    thresholds: AspectThresholds,
) -> list[AbstractMatch]:
    """Rank corpus articles text-similar to an uploaded abstract vector.

    Only articles whose score classifies as Similar are returned, best
    first. The list may be empty.
    """
    matrix = text_vectors.matrix
    scores = np.asarray(matrix @ np.asarray(vector, dtype=np.float64)).ravel()
    scores = snap_scores(scores)
    out = []
    for idx in np.flatnonzero(scores >= thresholds.theta_hi):
        article_id = text_vectors.ids[idx]
        if text_vectors.is_sentinel(article_id):
            continue
        out.append(AbstractMatch(article_id, float(scores[idx]), TriState.SIMILAR))
    out.sort(key=lambda m: (-m.score, m.id))
    return out
