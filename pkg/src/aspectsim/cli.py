"""Command-line pipeline driver.

Stages write into one artifact directory (``--out``) and verify that every
prerequisite artifact came from the same corpus snapshot:

    aspectsim ingest --input corpus.csv --out work/
    aspectsim embed --out work/ --seed 7
    aspectsim classify --out work/ --thresholds cuts.json
    aspectsim calibrate --out work/
    aspectsim report use-case-1 --out work/ --exact-mode
    aspectsim serve --out work/ --port 8000
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .calibrate import DEFAULT_GRID, calibrate
from .corpus import COLUMN_PRESETS, load_corpus, save_corpus
from .embedding import ASPECTS, AspectId, TopologyParams, load_vectors
from .engine import (
    CORPUS_FILE,
    Manifest,
    MANIFEST,
    load_engine,
    run_classify_stage,
    run_embed_stage,
    vectors_file,
)
from .errors import AspectSimError
from .reports import use_case_1, use_case_2
from .simstore import Thresholds
from . import corpus as corpus_mod


def _parse_span(text: str) -> tuple[int, int]:
    sep = ":" if ":" in text else "-"
    low, high = text.split(sep, 1)
    return int(low), int(high)


def _emit(data: dict, fmt: str, out_path: str | None, csv_rows=None) -> None:
    if fmt == "csv" and csv_rows is not None:
        rows = list(csv_rows)
        target = open(out_path, "w", newline="", encoding="utf-8") if out_path else sys.stdout
        try:
            writer = csv.DictWriter(target, fieldnames=list(rows[0].keys()) if rows else [])
            writer.writeheader()
            writer.writerows(rows)
        finally:
            if out_path:
                target.close()
    else:
        text = json.dumps(data, indent=2)
        if out_path:
            Path(out_path).write_text(text + "\n", encoding="utf-8")
        else:
            print(text)


def cmd_ingest(args) -> int:
    colmap = COLUMN_PRESETS[args.preset]
    span = _parse_span(args.span) if args.span else None
    corpus, report = load_corpus(args.input, fmt=args.format, colmap=colmap, span=span)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    save_corpus(corpus, out / CORPUS_FILE)
    checksum = corpus_mod.corpus_checksum(corpus)
    (out / "ingest-report.json").write_text(
        json.dumps(report.to_dict(), indent=2), encoding="utf-8"
    )
    Manifest(out / MANIFEST).record(
        "ingest", checksum, articles=len(corpus), span=list(corpus.span)
    )
    report_json = json.dumps(report.to_dict(), indent=2)
    if args.report:
        Path(args.report).write_text(report_json + "\n", encoding="utf-8")
    else:
        print(report_json, file=sys.stderr)
    print(f"ingested {len(corpus)} articles into {out}")
    return 0


def cmd_embed(args) -> int:
    aspects = [AspectId(a.strip()) for a in args.aspects.split(",")] if args.aspects else list(ASPECTS)
    params = TopologyParams(
        dim=args.dim,
        walks_per_node=args.walks,
        walk_length=args.walk_length,
        window=args.window,
        negative_samples=args.negative,
        epochs=args.epochs,
        learning_rate=args.learning_rate,
        rng_seed=args.seed,
    )
    produced = run_embed_stage(
        args.out,
        aspects=aspects,
        topology_params=params,
        text_mode=args.text_mode,
        text_import_path=args.text_vectors,
    )
    for aspect, vectors in produced.items():
        print(f"embedded {aspect.value}: {len(vectors)} vectors, dim {vectors.dim}")
    return 0


def cmd_classify(args) -> int:
    thresholds = Thresholds.from_json_file(args.thresholds) if args.thresholds else Thresholds()
    stores = run_classify_stage(args.out, thresholds=thresholds, exact_mode=args.exact_mode)
    for aspect, store in stores.items():
        counts = store.counts()
        print(
            f"classified {aspect.value} ({store.mode}): "
            f"{counts['similar']} similar, {counts['uncertain']} uncertain, "
            f"{counts['dissimilar']} dissimilar"
        )
    return 0


def cmd_calibrate(args) -> int:
    workdir = Path(args.out)
    corpus, _ = load_corpus(workdir / CORPUS_FILE, fmt="json")
    grid = tuple(float(v) for v in args.grid.split(",")) if args.grid else DEFAULT_GRID
    vectors = {}
    for aspect in ASPECTS:
        path = workdir / vectors_file(aspect)
        if path.exists():
            vectors[aspect] = load_vectors(path)
    result = calibrate(corpus, vectors, grid)
    _emit(result, args.format, args.report, csv_rows=result["rows"])
    return 0


def cmd_report(args) -> int:
    engine = load_engine(args.out, exact_mode=args.exact_mode)
    if args.which == "use-case-1":
        data = use_case_1(engine)
        csv_rows = [
            {
                "a": p["pair"][0],
                "b": p["pair"][1],
                "text_score": p["text_score"],
                "authors_class": p["authors_class"],
                "authors_score": p["authors_score"],
            }
            for p in data["missing_citations"]["pairs"]
        ]
    else:
        data = use_case_2(engine, keyword=args.keyword)
        csv_rows = [
            {
                "size": c["size"],
                "avg_score": c["avg_score"],
                "tracked_fraction": c["tracked_fraction"],
                "members": ";".join(c["members"]),
            }
            for c in data["clusters"]
        ]
    _emit(data, args.format, args.report, csv_rows=csv_rows)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    engine = load_engine(args.out, exact_mode=args.exact_mode)
    app = create_app(engine, watch_dir=args.watch_dir, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aspectsim",
        description="Aspect-wise similarity classification and exploration",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="load and validate a corpus file")
    p.add_argument("--input", required=True, help="corpus file (csv or json)")
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("--preset", choices=sorted(COLUMN_PRESETS), default="default")
    p.add_argument("--span", default=None, help="accepted year range, e.g. 1990:2018")
    p.add_argument("--out", required=True, help="artifact directory")
    p.add_argument("--report", default=None, help="write the validation report here")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("embed", help="embed the corpus aspects")
    p.add_argument("--out", required=True)
    p.add_argument("--aspects", default=None, help="comma list, default all four")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--deterministic",
        action="store_true",
        default=True,
        help="single-threaded deterministic training (always on; flag kept for scripts)",
    )
    p.add_argument("--text-mode", choices=["builtin", "imported"], default="builtin")
    p.add_argument("--text-vectors", default=None, help="imported text vector file")
    p.add_argument("--dim", type=int, default=128)
    p.add_argument("--walks", type=int, default=10)
    p.add_argument("--walk-length", type=int, default=80)
    p.add_argument("--window", type=int, default=5)
    p.add_argument("--negative", type=int, default=5)
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--learning-rate", type=float, default=0.025)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("classify", help="build the pairwise similarity stores")
    p.add_argument("--out", required=True)
    p.add_argument("--thresholds", default=None, help="JSON threshold table")
    p.add_argument("--exact-mode", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("calibrate", help="sweep thresholds against exact overrides")
    p.add_argument("--out", required=True)
    p.add_argument("--grid", default=None, help="comma list of candidate cuts")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--report", default=None, help="write the sweep table here")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("report", help="reproduce the use-case statistics")
    p.add_argument("which", choices=["use-case-1", "use-case-2"])
    p.add_argument("--out", required=True)
    p.add_argument("--exact-mode", action="store_true")
    p.add_argument("--keyword", default="clustering")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--report", default=None, help="write the report here")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--out", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--exact-mode", action="store_true")
    p.add_argument("--watch-dir", default=None, help="abstract file-drop directory")
    p.add_argument("--ui-dir", default=None, help="serve a built web ui from here")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AspectSimError as exc:
        print(
            json.dumps({"error": {"code": exc.code, "message": str(exc)}}),
            file=sys.stderr,
        )
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
