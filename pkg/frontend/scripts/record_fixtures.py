"""Record API fixtures for the frontend contract tests.

Builds a deterministic synthetic corpus, runs the real engine and HTTP
service in-process, and freezes selected responses under tests/fixtures/.
Rerun after any wire-format change:

    python3 frontend/scripts/record_fixtures.py
"""

import json
import random
from pathlib import Path

from fastapi.testclient import TestClient

from aspectsim.corpus import Article, Corpus
from aspectsim.engine import build_engine
from aspectsim.server import create_app

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def fixture_corpus() -> Corpus:
    random.seed(4)
    words = [f"w{k}" for k in range(300)]
    ids = [f"A{i}" for i in range(60)]
    articles = []
    for i, article_id in enumerate(ids):
        pool = words[(i % 12) * 25 : (i % 12) * 25 + 25]
        abstract = " ".join(random.choices(pool, k=12))
        refs = sorted(random.sample(ids[:i], k=min(i, random.randint(0, 2))))
        articles.append(
            Article(
                id=article_id,
                title=f"Study {i}",
                authors=(f"Person {i % 9}", f"Person {(i + 3) % 9}"),
                year=1990 + i % 29,
                abstract=abstract,
                keywords=("clustering",) if i % 5 == 0 else (),
                cite_count_a=i % 7,
                cite_count_b=(i * 3) % 11,
                references=tuple(refs),
            )
        )
    return Corpus(articles, (1990, 2018))


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    engine = build_engine(fixture_corpus(), exact_mode=True)
    client = TestClient(create_app(engine))

    def record(name, response):
        assert response.status_code == 200, (name, response.status_code, response.text)
        (OUT / f"{name}.json").write_text(
            json.dumps(response.json(), indent=2, sort_keys=True), encoding="utf-8"
        )
        print(f"recorded {name}.json")

    record("meta", client.get("/api/meta"))
    record(
        "query_topology_yes",
        client.post("/api/query", json={"criteria": {"topology": "yes"}}),
    )
    tracked_query = client.post(
        "/api/query",
        json={"criteria": {"text": "yes"}, "tracking": {"author": "Person 1"}},
    )
    record("query_text_yes_tracked", tracked_query)

    members = client.post(
        "/api/query", json={"criteria": {"topology": "yes"}}
    ).json()["clusters"][0]["members"]
    record(
        "network_topology_yes",
        client.post(
            "/api/network",
            json={"criteria": {"topology": "yes"}, "members": members[:8]},
        ),
    )
    record(
        "target_text_yes",
        client.post(
            "/api/target",
            json={"criteria": {"text": "yes", "authors": "yes"}, "id": members[0]},
        ),
    )
    abstract = engine.corpus.articles[5].abstract
    record(
        "upload_duplicate",
        client.post("/api/upload-abstract", json={"text": abstract}),
    )
    record("article", client.get(f"/api/article/{members[0]}"))
    record("search_keyword", client.get("/api/search", params={"keyword": "w1"}))


if __name__ == "__main__":
    main()
