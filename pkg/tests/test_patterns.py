import numpy as np
import pytest

from aspectsim.embedding.vectors import AspectId
from aspectsim.errors import EmptyQuery, NoActiveCriteria, UnknownId
from aspectsim.patterns import (
    Choice,
    CriteriaSpec,
    MatchSet,
    cluster,
    cluster_summary,
    coverage_stats,
    evaluate_criteria,
    match_external_abstract,
    similarity_network,
    target_to_all,
    track,
)
from aspectsim.simstore import AspectPairStore, AspectThresholds, TriState, pair_key

from helpers import closure_components, make_article, make_corpus

TH = AspectThresholds(0.6, 0.3)


def store_from(aspect, ids, similar=(), uncertain=(), default_score=0.8):
    def table(pairs):
        out = {}
        for entry in pairs:
            if len(entry) == 3:
                a, b, score = entry
            else:
                (a, b), score = entry, default_score
            out[pair_key(a, b)] = score
        return out

    return AspectPairStore(aspect, ids, table(similar), table(uncertain), TH)


class ScoreTable:
    """Fixed per-aspect pair scores for tests; 0 for unknown pairs."""

    def __init__(self, ids, scores):
        self.ids = list(ids)
        self.table = {(a, pair_key(x, y)): s for (a, x, y), s in scores.items()}

    def score(self, aspect, a, b):
        return self.table.get((aspect, pair_key(a, b)), 0.0)

    def score_all(self, aspect, a):
        return np.array([self.score(aspect, a, other) for other in self.ids])


IDS = ["a", "b", "c", "d"]


def criteria_fixture():
    text = store_from(AspectId.TEXT, IDS, similar=[("a", "b"), ("b", "c")], uncertain=[("c", "d")])
    topo = store_from(AspectId.TOPOLOGY, IDS, similar=[("a", "b")])
    return {AspectId.TEXT: text, AspectId.TOPOLOGY: topo}


def test_evaluate_yes_no_combination_hand_enumerated():
    stores = criteria_fixture()
    match = evaluate_criteria(CriteriaSpec(text=Choice.YES, topology=Choice.NO), stores)
    assert match.pairs == {("b", "c")}


def test_evaluate_all_inactive_raises():
    with pytest.raises(NoActiveCriteria):
        evaluate_criteria(CriteriaSpec(), criteria_fixture())


def test_evaluate_yes_on_empty_store_is_empty():
    stores = {AspectId.TEXT: store_from(AspectId.TEXT, IDS)}
    match = evaluate_criteria(CriteriaSpec(text=Choice.YES), stores)
    assert match.pairs == set()


def test_evaluate_uncertain_satisfies_neither_side():
    stores = criteria_fixture()
    yes = evaluate_criteria(CriteriaSpec(text=Choice.YES), stores)
    no = evaluate_criteria(CriteriaSpec(text=Choice.NO), stores)
    assert pair_key("c", "d") not in yes.pairs
    assert pair_key("c", "d") not in no.pairs


def test_evaluate_no_only_yields_complement():
    stores = criteria_fixture()
    no = evaluate_criteria(CriteriaSpec(text=Choice.NO), stores)
    assert no.pairs == {("a", "c"), ("a", "d"), ("b", "d")}


def test_negation_duality_without_uncertain():
    store = store_from(AspectId.TEXT, IDS, similar=[("a", "b"), ("c", "d")])
    stores = {AspectId.TEXT: store}
    yes = evaluate_criteria(CriteriaSpec(text=Choice.YES), stores).pairs
    no = evaluate_criteria(CriteriaSpec(text=Choice.NO), stores).pairs
    all_pairs = {pair_key(a, b) for i, a in enumerate(IDS) for b in IDS[i + 1 :]}
    assert yes | no == all_pairs
    assert not yes & no


def test_criteria_monotonicity_random():
    rng = np.random.default_rng(17)
    ids = [f"v{i}" for i in range(10)]
    seen = rng.random
    stores = {}
    for aspect in (AspectId.TEXT, AspectId.TOPOLOGY, AspectId.AUTHORS):
        similar = [
            (ids[i], ids[j])
            for i in range(10)
            for j in range(i + 1, 10)
            if seen() < 0.3
        ]
        stores[aspect] = store_from(aspect, ids, similar=similar)
    base = evaluate_criteria(CriteriaSpec(text=Choice.YES), stores)
    tighter = evaluate_criteria(CriteriaSpec(text=Choice.YES, topology=Choice.YES), stores)
    assert tighter.pairs <= base.pairs
    with_no = evaluate_criteria(CriteriaSpec(text=Choice.YES, authors=Choice.NO), stores)
    assert with_no.pairs <= base.pairs


# --- clustering ---


def match_of(pairs, criteria=None):
    return MatchSet(criteria or CriteriaSpec(text=Choice.YES), {pair_key(*p) for p in pairs})


def test_cluster_chain_keeps_non_transitive_members_together():
    result = cluster(match_of([("1", "2"), ("2", "3")]), universe={"1", "2", "3", "4", "5"})
    assert len(result.clusters) == 1
    assert result.clusters[0].members == ("1", "2", "3")
    assert result.unclustered == {"4", "5"}


def test_cluster_empty_match():
    result = cluster(match_of([]), universe={"1", "2"})
    assert result.clusters == []
    assert result.unclustered == {"1", "2"}


def test_cluster_components_match_closure_oracle():
    rng = np.random.default_rng(23)
    for _ in range(30):
        n = int(rng.integers(2, 30))
        universe = {f"n{i}" for i in range(n)}
        pairs = set()
        for _ in range(int(rng.integers(0, 2 * n))):
            a, b = rng.choice(sorted(universe), 2, replace=False)
            pairs.add(pair_key(a, b))
        mine = cluster(match_of(pairs), universe)
        got = sorted(tuple(c.members) for c in mine.clusters)
        expected = sorted(
            tuple(sorted(c)) for c in closure_components(pairs, universe) if len(c) >= 2
        )
        assert got == expected
        singles = {
            next(iter(c)) for c in closure_components(pairs, universe) if len(c) == 1
        }
        assert mine.unclustered == singles


def test_cluster_intra_edges_are_exactly_member_pairs():
    pairs = [("1", "2"), ("2", "3"), ("4", "5")]
    result = cluster(match_of(pairs), universe={"1", "2", "3", "4", "5"})
    by_size = {c.members: sorted(c.intra_edges) for c in result.clusters}
    assert by_size[("1", "2", "3")] == [("1", "2"), ("2", "3")]
    assert by_size[("4", "5")] == [("4", "5")]


# --- cluster_summary ---


def test_summary_single_yes_edge():
    spec = CriteriaSpec(text=Choice.YES)
    match = match_of([("a", "b")], spec)
    scorer = ScoreTable(IDS, {(AspectId.TEXT, "a", "b"): 0.8})
    result = cluster(match, IDS, scorer=scorer)
    assert result.clusters[0].avg_score == pytest.approx(0.8, abs=1e-9)
    assert cluster_summary(result.clusters[0], spec, scorer) == {
        "avg_score": pytest.approx(0.8, abs=1e-9),
        "size": 2,
    }


def test_summary_mean_of_two_edges():
    spec = CriteriaSpec(text=Choice.YES)
    match = match_of([("a", "b"), ("b", "c")], spec)
    scorer = ScoreTable(
        IDS, {(AspectId.TEXT, "a", "b"): 0.6, (AspectId.TEXT, "b", "c"): 0.8}
    )
    result = cluster(match, IDS, scorer=scorer)
    assert result.clusters[0].avg_score == pytest.approx(0.7, abs=1e-9)


def test_summary_no_only_inverts_scores():
    spec = CriteriaSpec(topology=Choice.NO)
    match = match_of([("a", "b"), ("b", "c")], spec)
    scorer = ScoreTable(
        IDS, {(AspectId.TOPOLOGY, "a", "b"): 0.1, (AspectId.TOPOLOGY, "b", "c"): 0.3}
    )
    result = cluster(match, IDS, scorer=scorer)
    assert result.clusters[0].avg_score == pytest.approx(0.8, abs=1e-9)


# --- coverage stats ---


def test_coverage_fraction():
    match = match_of([("1", "2"), ("2", "3"), ("3", "4")])
    stats = coverage_stats(match, universe=[str(k) for k in range(1, 11)])
    assert stats.pair_count == 3
    assert stats.covered_articles == 4
    assert stats.covered_fraction == pytest.approx(0.4, abs=1e-9)


def test_coverage_empty():
    stats = coverage_stats(match_of([]), universe=["1", "2"])
    assert stats.covered_fraction == 0.0


# --- similarity network ---


def network_fixture(pairs):
    members = sorted({x for p in pairs for x in p})
    stores = {
        AspectId.TEXT: store_from(
            AspectId.TEXT, members, similar=[(a, b, 0.9) for a, b in pairs]
        )
    }
    scorer = ScoreTable(members, {})
    match = match_of(pairs)
    result = cluster(match, members)
    assert len(result.clusters) == 1
    return similarity_network(result.clusters[0], stores, scorer)


def test_network_path_betweenness_and_bridge():
    network = network_fixture([("a", "b"), ("b", "c")])
    scores = {n.id: n.betweenness for n in network.nodes}
    assert scores == {"a": 0.0, "b": 1.0, "c": 0.0}
    bridges = {n.id for n in network.nodes if n.bridge}
    assert bridges == {"b"}


def test_network_triangle_no_bridges():
    network = network_fixture([("a", "b"), ("b", "c"), ("a", "c")])
    assert all(n.betweenness == 0.0 for n in network.nodes)
    assert not any(n.bridge for n in network.nodes)


def test_network_star_center():
    network = network_fixture([("x", "l1"), ("x", "l2"), ("x", "l3")])
    scores = {n.id: n.betweenness for n in network.nodes}
    assert scores["x"] == 3.0
    assert {n.id for n in network.nodes if n.bridge} == {"x"}
    assert network.matrix_order[0] == "x"


def test_network_edges_carry_aspect_scores():
    network = network_fixture([("a", "b")])
    edge = network.edges[0]
    score, tri = edge.aspects[AspectId.TEXT]
    assert score == pytest.approx(0.9, abs=1e-9)
    assert tri is TriState.SIMILAR


def test_network_matrix_order_degree_then_id():
    network = network_fixture([("a", "b"), ("b", "c"), ("b", "d"), ("a", "c")])
    assert network.matrix_order == ["b", "a", "c", "d"]


# --- target to all ---


def target_fixture():
    articles = [
        make_article("t", authors=["ann", "bob"], abstract="alpha beta gamma"),
        make_article("m", authors=["ann"], abstract="alpha beta delta"),
        make_article("n", authors=["cyd"], abstract="alpha epsilon"),
        make_article("o", authors=["dee"], abstract="zeta eta"),
        make_article("p", authors=["bob"], abstract="theta iota"),
    ]
    corpus = make_corpus(articles)
    ids = corpus.ids
    stores = {
        AspectId.TEXT: store_from(
            AspectId.TEXT, ids, similar=[("t", "m", 0.9), ("t", "n", 0.7)]
        ),
        AspectId.TOPOLOGY: store_from(AspectId.TOPOLOGY, ids, similar=[("t", "o")]),
        AspectId.AUTHORS: store_from(
            AspectId.AUTHORS, ids, similar=[("t", "m", 0.7), ("t", "p", 0.7)]
        ),
    }
    scorer = ScoreTable(
        ids,
        {
            (AspectId.TEXT, "t", "m"): 0.9,
            (AspectId.TEXT, "t", "n"): 0.7,
            (AspectId.AUTHORS, "t", "m"): 0.7,
            (AspectId.AUTHORS, "t", "p"): 0.7,
        },
    )
    return corpus, stores, scorer


def test_target_statuses_hand_enumerated():
    corpus, stores, scorer = target_fixture()
    spec = CriteriaSpec(text=Choice.YES, topology=Choice.NO, authors=Choice.YES)
    report = target_to_all("t", spec, stores, scorer, corpus)
    status = {e.id: e.status.value for e in report.entries}
    # m: text sim, topo diss, authors sim -> match
    # n: text sim, topo diss, authors diss -> near miss (authors)
    # o: text diss, topo sim, authors diss -> other (three violations)
    # p: text diss, topo diss, authors sim -> near miss (text)
    assert status == {"m": "match", "n": "near_miss", "o": "other", "p": "near_miss"}
    failing = {e.id: e.failing_aspect for e in report.entries if e.failing_aspect}
    assert failing["n"] is AspectId.AUTHORS
    assert failing["p"] is AspectId.TEXT


def test_target_near_miss_is_exactly_one_violation():
    corpus, stores, scorer = target_fixture()
    spec = CriteriaSpec(text=Choice.YES, authors=Choice.YES)
    report = target_to_all("o", spec, stores, scorer, corpus)
    # Against o every aspect is dissimilar except topology; both active
    # criteria are violated for t -> other.
    entry = {e.id: e for e in report.entries}["t"]
    assert entry.status.value == "other"


def test_target_orders_matches_before_near_misses():
    corpus, stores, scorer = target_fixture()
    spec = CriteriaSpec(text=Choice.YES)
    report = target_to_all("t", spec, stores, scorer, corpus)
    statuses = [e.status.value for e in report.entries]
    assert statuses == sorted(statuses, key=["match", "near_miss", "other"].index)
    matches = [e for e in report.entries if e.status.value == "match"]
    assert [e.id for e in matches] == ["m", "n"]  # 0.9 before 0.7


def test_target_shared_words_and_authors():
    corpus, stores, scorer = target_fixture()
    spec = CriteriaSpec(text=Choice.YES)
    report = target_to_all("t", spec, stores, scorer, corpus)
    entry = {e.id: e for e in report.entries}["m"]
    assert entry.shared_authors == ["ann"]
    assert entry.shared_words == ["alpha", "beta"]


def test_target_status_symmetric():
    corpus, stores, scorer = target_fixture()
    spec = CriteriaSpec(text=Choice.YES, authors=Choice.YES)
    for a, b in [("t", "m"), ("t", "n"), ("m", "p")]:
        fwd = {e.id: e.status for e in target_to_all(a, spec, stores, scorer, corpus).entries}
        rev = {e.id: e.status for e in target_to_all(b, spec, stores, scorer, corpus).entries}
        assert fwd[b] == rev[a]


def test_target_unknown_id_and_inactive_spec():
    corpus, stores, scorer = target_fixture()
    with pytest.raises(UnknownId):
        target_to_all("missing", CriteriaSpec(text=Choice.YES), stores, scorer, corpus)
    with pytest.raises(NoActiveCriteria):
        target_to_all("t", CriteriaSpec(), stores, scorer, corpus)


# --- tracking ---


def tracking_corpus():
    return make_corpus(
        [
            make_article("A1", title="Visual clustering methods", abstract="clustering graphs"),
            make_article("A2", abstract="cluster analysis article", keywords=["clustering"]),
            make_article("A3", abstract="art of embedding", authors=["Grace Hopper"]),
            make_article("A4", abstract="embedding articles", authors=["Grace Murray"]),
        ]
    )


def test_track_keyword_whole_token_only():
    corpus = tracking_corpus()
    assert track("clustering", None, corpus) == {"A1", "A2"}
    # "art" must not match "article" by substring.
    assert track("art", None, corpus) == {"A3"}


def test_track_author_substring():
    corpus = tracking_corpus()
    assert track(None, "grace", corpus) == {"A3", "A4"}
    assert track(None, "murray", corpus) == {"A4"}


def test_track_both_intersect():
    corpus = tracking_corpus()
    assert track("embedding", "grace", corpus) == {"A3", "A4"}
    assert track("clustering", "grace", corpus) == set()


def test_track_empty_query_raises():
    with pytest.raises(EmptyQuery):
        track(None, None, tracking_corpus())


def test_track_unknown_keyword_empty():
    assert track("zzznope", None, tracking_corpus()) == set()


def test_tracked_fraction_and_cluster_filtering():
    universe = ["1", "2", "3", "4", "5", "6", "7"]
    pairs = [("1", "2"), ("2", "3"), ("3", "4"), ("5", "6")]
    match = match_of(pairs)
    tracked = {"1", "4", "7"}
    result = cluster(match, universe, tracked=tracked)
    assert len(result.clusters) == 1  # {5,6} has no tracked member
    kept = result.clusters[0]
    assert kept.members == ("1", "2", "3", "4")
    assert kept.tracked_fraction == pytest.approx(0.5, abs=1e-9)
    assert result.unclustered == {"7"}


# --- external abstract matching ---


def test_match_external_duplicate_tops_ranking():
    from aspectsim.embedding import embed_external_abstract, embed_text

    corpus = make_corpus(
        [
            make_article("A0", abstract="graph embedding networks"),
            make_article("A1", abstract="unrelated words entirely"),
            make_article("A2", abstract="other topic here"),
        ]
    )
    vectors, fit = embed_text(corpus)
    uploaded = embed_external_abstract("graph embedding networks", fit)
    matches = match_external_abstract(uploaded, vectors, AspectThresholds(0.5, 0.35))
    assert matches[0].id == "A0"
    assert matches[0].score == pytest.approx(1.0, abs=1e-9)


def test_match_external_orthogonal_is_empty():
    from aspectsim.embedding import embed_external_abstract, embed_text

    corpus = make_corpus(
        [
            make_article("A0", abstract="alpha beta"),
            make_article("A1", abstract="gamma delta"),
            make_article("A2", abstract="epsilon zeta"),
        ]
    )
    vectors, fit = embed_text(corpus)
    uploaded = embed_external_abstract("epsilon", fit)
    matches = match_external_abstract(uploaded, vectors, AspectThresholds(0.5, 0.35))
    assert [m.id for m in matches] == ["A2"]
    only_a2 = match_external_abstract(uploaded, vectors, AspectThresholds(0.99, 0.35))
    assert all(m.id == "A2" for m in only_a2)
