import json
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from aspectsim.corpus import CitationGraph, build_citation_graph
from aspectsim.embedding import (
    AspectId,
    AspectVectors,
    TextEmbedder,
    TopologyEmbedder,
    TopologyParams,
    embed_authors,
    embed_external_abstract,
    embed_numeric,
    embed_text,
    embed_topology,
    load_vectors,
    ochiai,
    save_vectors,
)
from aspectsim.errors import MissingVector, NoFitState, NoKnownTokens

from helpers import make_article, make_corpus

UNIT_TOL = 1e-9


def graph_from_edges(nodes, edges) -> CitationGraph:
    adjacency = {n: set() for n in nodes}
    for u, v in edges:
        adjacency[u].add(v)
        adjacency[v].add(u)
    return CitationGraph(nodes=list(nodes), directed_edges=set(edges), adjacency=adjacency)


def row_cosine(vectors: AspectVectors, a: str, b: str) -> float:
    return float(np.dot(vectors.vector(a), vectors.vector(b)))


def assert_unit_rows(vectors: AspectVectors):
    for article_id in vectors.ids:
        norm = np.linalg.norm(vectors.vector(article_id))
        if vectors.is_sentinel(article_id):
            assert norm == 0.0
        else:
            assert abs(norm - 1.0) < UNIT_TOL


# --- numeric aspect ---


def numeric_corpus(counts):
    return make_corpus(
        [make_article(f"A{i}", counts=c) for i, c in enumerate(counts)]
    )


def test_numeric_identical_zero_counts():
    vectors = embed_numeric(numeric_corpus([(0, 0), (0, 0)]))
    assert row_cosine(vectors, "A0", "A1") == pytest.approx(1.0, abs=UNIT_TOL)


def test_numeric_shared_constant_keeps_cosine_positive():
    vectors = embed_numeric(numeric_corpus([(0, 0), (40, 17)]))
    assert row_cosine(vectors, "A0", "A1") > 0.0


def test_numeric_half_from_crossed_counts():
    # (e-1, 0) and (0, e-1) become (1, 0, 1) and (0, 1, 1): cosine 1/2.
    e_minus_1 = np.e - 1.0
    vectors = embed_numeric(numeric_corpus([(e_minus_1, 0), (0, e_minus_1)]))
    assert row_cosine(vectors, "A0", "A1") == pytest.approx(0.5, abs=UNIT_TOL)


def test_numeric_unit_norms():
    vectors = embed_numeric(numeric_corpus([(0, 0), (3, 9), (120, 1)]))
    assert_unit_rows(vectors)


# --- authors aspect ---


def authors_corpus(author_lists):
    return make_corpus(
        [make_article(f"A{i}", authors=names) for i, names in enumerate(author_lists)]
    )


def test_authors_shared_one_of_two():
    vectors = embed_authors(authors_corpus([("a", "b"), ("b", "c")]))
    assert row_cosine(vectors, "A0", "A1") == pytest.approx(0.5, abs=UNIT_TOL)


def test_authors_identical_lists():
    vectors = embed_authors(authors_corpus([("a", "b"), ("a", "b")]))
    assert row_cosine(vectors, "A0", "A1") == pytest.approx(1.0, abs=UNIT_TOL)


def test_authors_disjoint_sets():
    vectors = embed_authors(authors_corpus([("a", "b"), ("c", "d")]))
    assert row_cosine(vectors, "A0", "A1") == 0.0


def test_authors_indicator_cosine_equals_ochiai_exhaustive():
    pool = ["p", "q", "r", "s"]
    subsets = [set(c) for size in (1, 2, 3, 4) for c in combinations(pool, size)]
    for left in subsets:
        for right in subsets:
            vectors = embed_authors(authors_corpus([sorted(left), sorted(right)]))
            assert row_cosine(vectors, "A0", "A1") == pytest.approx(
                ochiai(left, right), abs=UNIT_TOL
            )


@settings(max_examples=60, deadline=None)
@given(
    st.sets(st.sampled_from([f"w{i}" for i in range(8)]), min_size=1, max_size=8),
    st.sets(st.sampled_from([f"w{i}" for i in range(8)]), min_size=1, max_size=8),
)
def test_authors_indicator_cosine_equals_ochiai_random(left, right):
    vectors = embed_authors(authors_corpus([sorted(left), sorted(right)]))
    assert row_cosine(vectors, "A0", "A1") == pytest.approx(ochiai(left, right), abs=UNIT_TOL)


# --- text aspect ---


def text_corpus(abstracts):
    return make_corpus(
        [make_article(f"A{i}", abstract=a) for i, a in enumerate(abstracts)]
    )


def test_text_identical_abstracts_cosine_one():
    corpus = text_corpus(
        ["graph embedding networks", "graph embedding networks", "totally unrelated words here"]
    )
    vectors, _ = embed_text(corpus)
    assert row_cosine(vectors, "A0", "A1") == pytest.approx(1.0, abs=UNIT_TOL)


def test_text_disjoint_abstracts_cosine_zero():
    corpus = text_corpus(["alpha beta gamma", "delta epsilon zeta", "eta theta iota"])
    vectors, _ = embed_text(corpus)
    assert row_cosine(vectors, "A0", "A1") == 0.0


def test_text_empty_abstract_becomes_sentinel():
    corpus = text_corpus(["alpha beta", "", "gamma delta"])
    vectors, _ = embed_text(corpus)
    assert vectors.is_sentinel("A1")
    assert np.linalg.norm(vectors.vector("A1")) == 0.0
    assert_unit_rows(vectors)


def test_text_imported_missing_vector(tmp_path):
    corpus = text_corpus(["alpha", "beta"])
    path = tmp_path / "vectors.txt"
    path.write_text("A0 0.1 0.2 0.3\n", encoding="utf-8")
    with pytest.raises(MissingVector) as excinfo:
        embed_text(corpus, mode="imported", import_path=path)
    assert excinfo.value.article_id == "A1"


def test_text_imported_normalizes_and_covers(tmp_path):
    corpus = text_corpus(["alpha", "beta"])
    path = tmp_path / "vectors.json"
    path.write_text(json.dumps({"A0": [3, 4], "A1": [4, 3]}), encoding="utf-8")
    vectors, fit = embed_text(corpus, mode="imported", import_path=path)
    assert fit is None
    assert_unit_rows(vectors)
    assert row_cosine(vectors, "A0", "A1") == pytest.approx(24 / 25, abs=UNIT_TOL)


# --- external abstract upload ---


def test_upload_duplicate_of_existing_abstract_scores_one():
    corpus = text_corpus(
        ["graph embedding networks", "something else entirely", "third topic words"]
    )
    vectors, fit = embed_text(corpus)
    uploaded = embed_external_abstract("graph embedding networks", fit)
    assert float(np.dot(uploaded, vectors.vector("A0"))) == pytest.approx(1.0, abs=UNIT_TOL)


def test_upload_stopwords_only_raises():
    corpus = text_corpus(["alpha beta", "gamma delta"])
    _, fit = embed_text(corpus)
    with pytest.raises(NoKnownTokens):
        embed_external_abstract("the of a", fit)


def test_upload_without_fit_state_raises():
    with pytest.raises(NoFitState):
        embed_external_abstract("anything", None)


def test_upload_ranking_matches_hand_computed_dot_products():
    # Three articles over a known vocabulary; expected cosines are rebuilt
    # from the raw tf * log(N/df) definition with plain numpy below.
    abstracts = {
        "A0": "alpha beta gamma delta",
        "A1": "alpha epsilon zeta eta",
        "A2": "theta iota kappa lam",
    }
    upload = "alpha beta theta"
    corpus = text_corpus(list(abstracts.values()))
    vectors, fit = embed_text(corpus)
    uploaded = embed_external_abstract(upload, fit)

    vocab = sorted({t for text in abstracts.values() for t in text.split()})
    df = {t: sum(t in text.split() for text in abstracts.values()) for t in vocab}

    def hand_vector(text):
        weights = np.array(
            [text.split().count(t) * np.log(3 / df[t]) for t in vocab]
        )
        return weights / np.linalg.norm(weights)

    expected = {
        article_id: float(np.dot(hand_vector(upload), hand_vector(text)))
        for article_id, text in abstracts.items()
    }
    for article_id in abstracts:
        got = float(np.dot(uploaded, vectors.vector(article_id)))
        assert got == pytest.approx(expected[article_id], abs=UNIT_TOL)
    ranking = sorted(expected, key=expected.get, reverse=True)
    assert ranking[0] == "A0"
    assert expected[ranking[0]] > expected[ranking[1]]


# --- topology aspect ---


def dumbbell_graph() -> CitationGraph:
    clique_a = [f"c{i}" for i in range(6)]
    clique_b = [f"d{i}" for i in range(6)]
    edges = [(a, b) for a, b in combinations(clique_a, 2)]
    edges += [(a, b) for a, b in combinations(clique_b, 2)]
    edges.append(("c0", "d0"))
    return graph_from_edges(clique_a + clique_b, edges)


TEST_TOPO = dict(
    dim=32, walks_per_node=8, walk_length=20, window=4,
    negative_samples=5, epochs=3, learning_rate=0.05,
)


def community_separation(vectors: AspectVectors) -> float:
    clique_a = [f"c{i}" for i in range(6)]
    clique_b = [f"d{i}" for i in range(6)]
    intra = [row_cosine(vectors, a, b) for a, b in combinations(clique_a, 2)]
    intra += [row_cosine(vectors, a, b) for a, b in combinations(clique_b, 2)]
    inter = [row_cosine(vectors, a, b) for a in clique_a for b in clique_b]
    return float(np.mean(intra) - np.mean(inter))


def test_dumbbell_separation_seed_42():
    vectors = embed_topology(dumbbell_graph(), TopologyParams(rng_seed=42, **TEST_TOPO))
    assert community_separation(vectors) > 0.0


def test_single_node_graph_unit_vector():
    graph = graph_from_edges(["only"], [])
    vectors = embed_topology(graph, TopologyParams(rng_seed=1, **TEST_TOPO))
    assert np.linalg.norm(vectors.vector("only")) == pytest.approx(1.0, abs=UNIT_TOL)


def test_same_seed_bit_identical():
    graph = dumbbell_graph()
    params = TopologyParams(rng_seed=7, **TEST_TOPO)
    first = embed_topology(graph, params)
    second = embed_topology(graph, params)
    assert np.array_equal(first.matrix, second.matrix)


def test_different_seed_differs():
    graph = dumbbell_graph()
    first = embed_topology(graph, TopologyParams(rng_seed=1, **TEST_TOPO))
    second = embed_topology(graph, TopologyParams(rng_seed=2, **TEST_TOPO))
    assert not np.array_equal(first.matrix, second.matrix)


def test_topology_unit_norms_with_isolated_node():
    graph = graph_from_edges(["a", "b", "alone"], [("a", "b")])
    vectors = embed_topology(graph, TopologyParams(rng_seed=3, **TEST_TOPO))
    assert_unit_rows(vectors)


def test_window_must_be_smaller_than_walk_length():
    with pytest.raises(ValueError):
        TopologyEmbedder(window=20, walk_length=20).fit(dumbbell_graph())


def test_estimator_get_params_roundtrip():
    embedder = TopologyEmbedder(dim=16, rng_seed=9)
    params = embedder.get_params()
    assert params["dim"] == 16
    clone = TopologyEmbedder(**params)
    assert clone.get_params() == params


def test_estimator_transform_after_fit():
    graph = dumbbell_graph()
    embedder = TopologyEmbedder(rng_seed=4, **TEST_TOPO).fit(graph)
    rows = embedder.transform(["c0", "d0"])
    assert rows.shape == (2, TEST_TOPO["dim"])


def test_every_embedder_is_deterministic():
    corpus = make_corpus(
        [
            make_article("A0", abstract="alpha beta", authors=["x", "y"], counts=(3, 4)),
            make_article("A1", abstract="beta gamma", authors=["y"], counts=(0, 9)),
        ]
    )
    first, _ = embed_text(corpus)
    second, _ = embed_text(corpus)
    assert np.array_equal(
        np.asarray(first.matrix.todense()), np.asarray(second.matrix.todense())
    )
    assert np.array_equal(
        np.asarray(embed_authors(corpus).matrix.todense()),
        np.asarray(embed_authors(corpus).matrix.todense()),
    )
    assert np.array_equal(embed_numeric(corpus).matrix, embed_numeric(corpus).matrix)


# --- vector persistence ---


def test_save_load_dense_roundtrip(tmp_path):
    corpus = numeric_corpus([(0, 0), (5, 2)])
    vectors = embed_numeric(corpus)
    path = tmp_path / "numeric.npz"
    save_vectors(vectors, path)
    loaded = load_vectors(path)
    assert loaded.aspect is AspectId.NUMERIC
    assert loaded.ids == vectors.ids
    assert np.array_equal(loaded.matrix, vectors.matrix)


def test_save_load_sparse_roundtrip(tmp_path):
    corpus = text_corpus(["alpha beta", "", "gamma"])
    vectors, _ = embed_text(corpus)
    path = tmp_path / "text.npz"
    save_vectors(vectors, path)
    loaded = load_vectors(path)
    assert loaded.sentinels == {"A1"}
    assert np.array_equal(
        np.asarray(loaded.matrix.todense()), np.asarray(vectors.matrix.todense())
    )


def test_text_fit_state_roundtrip():
    corpus = text_corpus(["alpha beta", "beta gamma"])
    vectors, fit = embed_text(corpus)
    restored = TextEmbedder.from_state(fit.to_state())
    uploaded = embed_external_abstract("alpha beta", restored)
    assert float(np.dot(uploaded, vectors.vector("A0"))) == pytest.approx(1.0, abs=UNIT_TOL)
