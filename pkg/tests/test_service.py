import json

import pytest
from fastapi.testclient import TestClient

from aspectsim.embedding import TopologyParams
from aspectsim.engine import build_engine
from aspectsim.server import create_app

from helpers import make_article, make_corpus

TOPO = TopologyParams(
    dim=16, walks_per_node=4, walk_length=10, window=3,
    negative_samples=3, epochs=2, learning_rate=0.05, rng_seed=1,
)


def service_corpus():
    return make_corpus(
        [
            make_article(
                "A1",
                title="Clustering survey",
                authors=["Ann One", "Bob Two"],
                abstract="clustering embedding methods overview",
                references=["A2"],
                counts=(5, 5),
            ),
            make_article(
                "A2",
                authors=["Ann One"],
                abstract="clustering embedding methods overview",
                counts=(5, 5),
            ),
            make_article(
                "A3",
                authors=["Cyd Three"],
                abstract="adjacency matrices layout rendering",
                references=["A2"],
                counts=(0, 0),
            ),
            make_article(
                "A4",
                authors=["Dee Four"],
                abstract="storage compaction engines throughput",
                counts=(40, 2),
            ),
            make_article(
                "A5",
                authors=["Eve Five"],
                abstract="latency benchmarks network probes",
                counts=(1, 30),
            ),
        ]
    )


@pytest.fixture(scope="module")
def client():
    engine = build_engine(service_corpus(), topology_params=TOPO, exact_mode=True)
    return TestClient(create_app(engine))


def test_meta(client):
    data = client.get("/api/meta").json()
    assert data["articles"] == 5
    assert data["modes"]["topology"] == "exact"
    assert data["modes"]["text"] == "embedding"
    assert "text" in data["thresholds"]
    assert data["upload_supported"] is True


def test_article_lookup(client):
    data = client.get("/api/article/A1").json()
    assert data["title"] == "Clustering survey"
    assert data["references"] == ["A2"]


def test_article_unknown_is_404(client):
    response = client.get("/api/article/NOPE")
    assert response.status_code == 404
    assert response.json()["error"]["code"] == "UnknownId"


def test_query_text_yes(client):
    response = client.post("/api/query", json={"criteria": {"text": "yes"}})
    assert response.status_code == 200
    data = response.json()
    assert data["clusters"][0]["members"] == ["A1", "A2"]
    assert data["stats"]["pair_count"] == 1
    assert data["stats"]["covered_fraction"] == pytest.approx(0.4)
    assert "banner" in data and "text=yes" in data["banner"]


def test_query_all_inactive_is_400(client):
    response = client.post("/api/query", json={"criteria": {}})
    assert response.status_code == 400
    assert response.json()["error"]["code"] == "NoActiveCriteria"


def test_query_bad_choice_is_400(client):
    response = client.post("/api/query", json={"criteria": {"text": "maybe"}})
    assert response.status_code == 400
    assert response.json()["error"]["code"] == "InvalidRequest"


def test_query_with_tracking_filters_and_reports_fraction(client):
    body = {"criteria": {"text": "yes"}, "tracking": {"keyword": "clustering"}}
    data = client.post("/api/query", json=body).json()
    assert data["tracked"] == ["A1", "A2"]
    assert data["clusters"][0]["tracked_fraction"] == pytest.approx(1.0)
    assert "Tracking 2 articles" in data["banner"]


def test_query_empty_tracking_is_400(client):
    body = {"criteria": {"text": "yes"}, "tracking": {}}
    response = client.post("/api/query", json=body)
    assert response.status_code == 400
    assert response.json()["error"]["code"] == "EmptyQuery"


def test_network_roundtrip(client):
    # Citation proximity in exact mode: A1-A2, A2-A3 direct, A1-A3 one hop.
    query = client.post("/api/query", json={"criteria": {"topology": "yes"}}).json()
    members = query["clusters"][0]["members"]
    assert members == ["A1", "A2", "A3"]
    network = client.post(
        "/api/network", json={"criteria": {"topology": "yes"}, "members": members}
    ).json()
    assert {n["id"] for n in network["nodes"]} == {"A1", "A2", "A3"}
    assert len(network["edges"]) == 3
    aspects = network["edges"][0]["aspects"]
    assert set(aspects) == {"topology", "text", "authors", "numeric"}


def test_network_unknown_member_is_404(client):
    response = client.post(
        "/api/network", json={"criteria": {"topology": "yes"}, "members": ["A1", "ZZ"]}
    )
    assert response.status_code == 404


def test_target_report(client):
    data = client.post(
        "/api/target", json={"criteria": {"text": "yes"}, "id": "A1"}
    ).json()
    assert data["target"] == "A1"
    by_id = {e["id"]: e for e in data["entries"]}
    assert by_id["A2"]["status"] == "match"
    assert by_id["A2"]["shared_authors"] == ["Ann One"]
    assert "clustering" in by_id["A2"]["shared_words"]
    assert len(data["entries"]) == 4


def test_target_unknown_is_404(client):
    response = client.post("/api/target", json={"criteria": {"text": "yes"}, "id": "ZZ"})
    assert response.status_code == 404


def test_upload_abstract_duplicate(client):
    data = client.post(
        "/api/upload-abstract",
        json={"text": "clustering embedding methods overview"},
    ).json()
    assert data["matches"][0]["id"] in {"A1", "A2"}
    assert data["matches"][0]["score"] == pytest.approx(1.0)
    assert data["matches"][0]["title"]


def test_upload_stopwords_only_is_422(client):
    response = client.post("/api/upload-abstract", json={"text": "the of a"})
    assert response.status_code == 422
    assert response.json()["error"]["code"] == "NoKnownTokens"


def test_upload_without_fit_state_is_409(tmp_path):
    corpus = service_corpus()
    vec_file = tmp_path / "text.json"
    vec_file.write_text(
        json.dumps({a.id: [1.0, float(i)] for i, a in enumerate(corpus.articles)}),
        encoding="utf-8",
    )
    engine = build_engine(
        corpus, topology_params=TOPO, exact_mode=True,
        text_mode="imported", text_import_path=vec_file,
    )
    imported_client = TestClient(create_app(engine))
    response = imported_client.post("/api/upload-abstract", json={"text": "clustering"})
    assert response.status_code == 409
    assert response.json()["error"]["code"] == "NoFitState"


def test_upload_watch_dir(tmp_path):
    engine = build_engine(service_corpus(), topology_params=TOPO, exact_mode=True)
    watch = tmp_path / "drops"
    watch.mkdir()
    (watch / "proposal.txt").write_text(
        "clustering embedding methods overview", encoding="utf-8"
    )
    watch_client = TestClient(create_app(engine, watch_dir=watch))
    data = watch_client.post("/api/upload-abstract", json={}).json()
    assert data["matches"][0]["score"] == pytest.approx(1.0)


def test_search_endpoint(client):
    data = client.get("/api/search", params={"keyword": "clustering"}).json()
    assert data["tracked"] == ["A1", "A2"]
    data = client.get("/api/search", params={"author": "ann"}).json()
    assert data["tracked"] == ["A1", "A2"]


def test_search_empty_query_is_400(client):
    response = client.get("/api/search")
    assert response.status_code == 400
    assert response.json()["error"]["code"] == "EmptyQuery"


def test_identical_requests_identical_responses(client):
    body = {"criteria": {"text": "yes", "authors": "no"}}
    first = client.post("/api/query", json=body)
    second = client.post("/api/query", json=body)
    assert first.json() == second.json()
