"""Stateless HTTP facade over an EngineState.

Every endpoint is a pure read of the immutable engine, so identical requests
yield identical responses and any number may run concurrently. Errors carry
a machine-readable code plus a message.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .embedding.vectors import AspectId
from .engine import EngineState
from .errors import (
    AspectSimError,
    EmptyQuery,
    FileUnreadable,
    NoActiveCriteria,
    NoFitState,
    NoKnownTokens,
    UnknownId,
)
from .patterns import ClusterResult, CriteriaSpec, SimilarityNetwork, TargetReport

_STATUS = {
    "NoActiveCriteria": 400,
    "EmptyQuery": 400,
    "InvalidRequest": 400,
    "UnknownId": 404,
    "NoFitState": 409,
    "NoKnownTokens": 422,
    "FileUnreadable": 422,
}


class InvalidRequest(AspectSimError):
    code = "InvalidRequest"


class TrackingQuery(BaseModel):
    keyword: str | None = None
    author: str | None = None


class QueryBody(BaseModel):
    criteria: dict[str, str]
    tracking: TrackingQuery | None = None


class NetworkBody(BaseModel):
    criteria: dict[str, str]
    members: list[str]


class TargetBody(BaseModel):
    criteria: dict[str, str]
    id: str


class UploadBody(BaseModel):
    text: str | None = None
    file: str | None = None


def parse_criteria(raw: dict[str, str]) -> CriteriaSpec:
    try:
        return CriteriaSpec(raw)
    except ValueError as exc:
        raise InvalidRequest(f"bad criteria: {exc}") from exc


def banner_text(result: ClusterResult) -> str:
    """One-sentence explanation of the settings and the current result."""
    active = [
        f"{aspect.value}={choice.value}"
        for aspect, choice in result.criteria.choices.items()
        if choice.value != "inactive"
    ]
    stats = result.stats
    text = (
        f"Criteria {', '.join(active)}: {stats.pair_count} matched pairs cover "
        f"{stats.covered_articles} articles ({stats.covered_fraction:.1%}); "
        f"{len(result.clusters)} clusters."
    )
    if result.tracked is not None:
        text += f" Tracking {len(result.tracked)} articles."
    return text


def cluster_payload(result: ClusterResult) -> dict:
    return {
        "clusters": [
            {
                "members": list(c.members),
                "size": c.size,
                "avg_score": c.avg_score,
                "tracked_fraction": c.tracked_fraction,
                "edge_count": len(c.intra_edges),
            }
            for c in result.clusters
        ],
        "unclustered": sorted(result.unclustered),
        "stats": result.stats.to_dict(),
        "tracked": sorted(result.tracked) if result.tracked is not None else None,
        "banner": banner_text(result),
    }


def network_payload(network: SimilarityNetwork) -> dict:
    return {
        "nodes": [
            {"id": n.id, "betweenness": n.betweenness, "bridge": n.bridge}
            for n in network.nodes
        ],
        "edges": [
            {
                "source": e.pair[0],
                "target": e.pair[1],
                "aspects": {
                    a.value: {"score": score, "class": tri.value}
                    for a, (score, tri) in e.aspects.items()
                },
            }
            for e in network.edges
        ],
        "matrix_order": network.matrix_order,
    }


def target_payload(report: TargetReport) -> dict:
    return {
        "target": report.target,
        "criteria": report.criteria.to_dict(),
        "entries": [
            {
                "id": e.id,
                "status": e.status.value,
                "failing_aspect": e.failing_aspect.value if e.failing_aspect else None,
                "aspects": {
                    a.value: {"score": score, "class": tri.value}
                    for a, (score, tri) in e.aspects.items()
                },
                "shared_authors": e.shared_authors,
                "shared_words": e.shared_words,
                "strength": e.strength,
            }
            for e in report.entries
        ],
    }


def create_app(
    engine: EngineState,
    watch_dir: str | Path | None = None,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    app = FastAPI(title="aspectsim", docs_url="/api/docs", openapi_url="/api/openapi.json")
    watch_path = Path(watch_dir) if watch_dir else None

    @app.exception_handler(AspectSimError)
    async def _handle(request: Request, exc: AspectSimError):
        status = _STATUS.get(exc.code, 500)
        return JSONResponse(
            status_code=status,
            content={"error": {"code": exc.code, "message": str(exc)}},
        )

    @app.get("/api/meta")
    def meta():
        return engine.meta()

    @app.get("/api/article/{article_id:path}")
    def article(article_id: str):
        if article_id not in engine.corpus:
            raise UnknownId(article_id)
        return engine.corpus.by_id[article_id].to_dict()

    @app.post("/api/query")
    def query(body: QueryBody):
        criteria = parse_criteria(body.criteria)
        keyword = body.tracking.keyword if body.tracking else None
        author = body.tracking.author if body.tracking else None
        if body.tracking is not None and not keyword and not author:
            raise EmptyQuery("tracking needs a keyword and/or an author")
        result = engine.run_query(criteria, keyword=keyword, author=author)
        return cluster_payload(result)

    @app.post("/api/network")
    def network(body: NetworkBody):
        criteria = parse_criteria(body.criteria)
        return network_payload(engine.run_network(criteria, body.members))

    @app.post("/api/target")
    def target(body: TargetBody):
        criteria = parse_criteria(body.criteria)
        return target_payload(engine.run_target(criteria, body.id))

    @app.post("/api/upload-abstract")
    def upload(body: UploadBody):
        if body.text:
            matches = engine.run_upload_text(body.text)
        elif watch_path is not None:
            matches = _upload_from_watch_dir(engine, watch_path, body.file)
        else:
            raise InvalidRequest("supply text, or run the service with --watch-dir")
        return {
            "matches": [
                {
                    "id": m.id,
                    "score": m.score,
                    "class": m.tri_state.value,
                    "title": engine.corpus.by_id[m.id].title,
                }
                for m in matches
            ]
        }

    @app.get("/api/search")
    def search(keyword: str | None = None, author: str | None = None):
        tracked = engine.run_search(keyword=keyword, author=author)
        return {"tracked": sorted(tracked), "count": len(tracked)}

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def _upload_from_watch_dir(engine: EngineState, watch_path: Path, name: str | None):
    """File-drop compatibility: embed or match the newest dropped file.

    ``.txt`` files hold a raw abstract; ``.vec`` (whitespace floats) and
    ``.json`` (array of floats) hold a pre-embedded vector.
    """
    if not watch_path.is_dir():
        raise FileUnreadable(f"watch directory {watch_path} does not exist")
    if name:
        candidate = watch_path / name
        if not candidate.exists():
            raise FileUnreadable(f"no such file in watch directory: {name}")
    else:
        files = sorted(
            (p for p in watch_path.iterdir() if p.is_file()),
            key=lambda p: p.stat().st_mtime,
        )
        if not files:
            raise FileUnreadable(f"watch directory {watch_path} is empty")
        candidate = files[-1]

    import json as _json

    import numpy as np

    if candidate.suffix == ".txt":
        return engine.run_upload_text(candidate.read_text(encoding="utf-8"))
    if candidate.suffix == ".json":
        vector = np.asarray(_json.loads(candidate.read_text(encoding="utf-8")), dtype=float)
    else:
        vector = np.asarray(candidate.read_text(encoding="utf-8").split(), dtype=float)
    expected = engine.vectors[AspectId.TEXT].dim
    if vector.ndim != 1 or vector.size != expected:
        raise InvalidRequest(f"expected a vector of length {expected}")
    return engine.run_upload_vector(vector)
