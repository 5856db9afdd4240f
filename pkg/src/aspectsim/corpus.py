"""Publication corpus: ingest, validation, indices, and the citation graph.

The corpus is loaded once, validated row by row, and is immutable afterwards.
Every downstream stage (embedding, classification, queries) works from the
same snapshot, identified by :func:`corpus_checksum`.
"""

from __future__ import annotations

import csv
import hashlib
import json
import re
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import EmptyCorpus, FileUnreadable, SchemaMismatch
from .stopwords import STOPWORDS

_TOKEN_RE = re.compile(r"[^\W_]+")

REQUIRED_FIELDS = (
    "id",
    "title",
    "authors",
    "year",
    "abstract",
    "keywords",
    "cite_count_a",
    "cite_count_b",
    "references",
)


def tokenize(text: str) -> list[str]:
    """Lowercase, split on non-alphanumeric runs, drop short tokens and stopwords.

    Deterministic by construction; idempotent on its own space-joined output.
    """
    if not text:
        return []
    tokens = _TOKEN_RE.findall(text.lower())
    return [t for t in tokens if len(t) >= 2 and t not in STOPWORDS]


@dataclass(frozen=True)
class Article:
    """One publication with its attributes and intra-corpus references."""

    id: str
    title: str
    authors: tuple[str, ...]
    year: int
    abstract: str
    keywords: tuple[str, ...]
    cite_count_a: int
    cite_count_b: int
    references: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "authors": list(self.authors),
            "year": self.year,
            "abstract": self.abstract,
            "keywords": list(self.keywords),
            "cite_count_a": self.cite_count_a,
            "cite_count_b": self.cite_count_b,
            "references": list(self.references),
        }


@dataclass
class ValidationReport:
    """Per-row ingest outcome: rejected rows and dropped references."""

    rows_total: int = 0
    rows_loaded: int = 0
    rejected: list[dict] = field(default_factory=list)
    dropped_references: list[dict] = field(default_factory=list)

    @property
    def dropped_reference_count(self) -> int:
        return len(self.dropped_references)

    def reject(self, row: int, article_id: str | None, errors: list[str]) -> None:
        self.rejected.append({"row": row, "id": article_id, "errors": errors})

    def to_dict(self) -> dict:
        return {
            "rows_total": self.rows_total,
            "rows_loaded": self.rows_loaded,
            "rows_rejected": len(self.rejected),
            "rejected": self.rejected,
            "dropped_reference_count": self.dropped_reference_count,
            "dropped_references": self.dropped_references,
        }


class Corpus:
    """Validated article collection with author and token indices.

    Indices are derived purely from the article list, so rebuilding a corpus
    from its own articles yields identical indices.
    """

    def __init__(self, articles: list[Article], span: tuple[int, int]):
        self.articles = list(articles)
        self.span = (int(span[0]), int(span[1]))
        self.by_id: dict[str, Article] = {a.id: a for a in self.articles}
        self.ids: list[str] = [a.id for a in self.articles]
        self.author_index: dict[str, set[str]] = {}
        self.token_index: dict[str, set[str]] = {}
        self.abstract_tokens: dict[str, frozenset[str]] = {}
        self._build_indices()

    def _build_indices(self) -> None:
        for a in self.articles:
            for name in a.authors:
                self.author_index.setdefault(name, set()).add(a.id)
            abstract = frozenset(tokenize(a.abstract))
            self.abstract_tokens[a.id] = abstract
            searchable = set(tokenize(a.title)) | set(abstract)
            for kw in a.keywords:
                searchable.update(tokenize(kw))
            for tok in searchable:
                self.token_index.setdefault(tok, set()).add(a.id)

    def __len__(self) -> int:
        return len(self.articles)

    def __contains__(self, article_id: str) -> bool:
        return article_id in self.by_id

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Corpus):
            return NotImplemented
        return self.articles == other.articles and self.span == other.span

    def to_dict(self) -> dict:
        return {
            "span": list(self.span),
            "articles": [a.to_dict() for a in self.articles],
        }


@dataclass(frozen=True)
class ColumnMap:
    """Maps logical article fields to input columns/keys.

    ``list_delimiter`` splits multi-valued CSV cells. The two citation-count
    columns are configuration because datasets name them inconsistently.
    """

    id: str = "id"
    title: str = "title"
    authors: str = "authors"
    year: str = "year"
    abstract: str = "abstract"
    keywords: str = "keywords"
    cite_count_a: str = "cite_count_a"
    cite_count_b: str = "cite_count_b"
    references: str = "references"
    list_delimiter: str = ";"

    def columns(self) -> dict[str, str]:
        return {f: getattr(self, f) for f in REQUIRED_FIELDS}


#: Mapping for the public IEEE VIS publication export (vispubdata).
VISPUBDATA_COLUMNS = ColumnMap(
    id="DOI",
    title="Title",
    authors="AuthorNames-Deduped",
    year="Year",
    abstract="Abstract",
    keywords="AuthorKeywords",
    cite_count_a="AminerCitationCount",
    cite_count_b="CitationCount_CrossRef",
    references="InternalReferences",
)

COLUMN_PRESETS = {"default": ColumnMap(), "vispubdata": VISPUBDATA_COLUMNS}


def _parse_list(value, delimiter: str) -> list[str]:
    if value is None:
        return []
    if isinstance(value, (list, tuple)):
        return [str(v).strip() for v in value if str(v).strip()]
    return [part.strip() for part in str(value).split(delimiter) if part.strip()]


def _parse_count(value) -> int:
    if value is None or value == "":
        return 0
    n = int(float(value))
    if n < 0:
        raise ValueError("negative count")
    return n


def _row_to_article(raw: dict, colmap: ColumnMap) -> tuple[Article | None, list[str]]:
    """Validate one input row. Returns (article, errors); article is None on failure."""
    errors: list[str] = []
    cols = colmap.columns()
    get = lambda f: raw.get(cols[f])

    article_id = str(get("id") or "").strip()
    if not article_id:
        errors.append("missing id")

    title = str(get("title") or "").strip()
    authors = _parse_list(get("authors"), colmap.list_delimiter)
    if not authors:
        errors.append("authors empty")

    year = 0
    try:
        year = int(float(get("year")))
    except (TypeError, ValueError):
        errors.append("year not an integer")

    abstract = str(get("abstract") or "")
    keywords = _parse_list(get("keywords"), colmap.list_delimiter)

    counts = {}
    for f in ("cite_count_a", "cite_count_b"):
        try:
            counts[f] = _parse_count(get(f))
        except (TypeError, ValueError):
            errors.append(f"{f} not a non-negative integer")

    references = _parse_list(get("references"), colmap.list_delimiter)

    if errors:
        return None, errors
    return (
        Article(
            id=article_id,
            title=title,
            authors=tuple(authors),
            year=year,
            abstract=abstract,
            keywords=tuple(keywords),
            cite_count_a=counts["cite_count_a"],
            cite_count_b=counts["cite_count_b"],
            references=tuple(references),
        ),
        [],
    )


def _read_rows(path: Path, fmt: str, colmap: ColumnMap) -> list[dict]:
    if fmt == "csv":
        try:
            with open(path, newline="", encoding="utf-8-sig") as fh:
                reader = csv.DictReader(fh)
                header = reader.fieldnames or []
                missing = [c for c in colmap.columns().values() if c not in header]
                if missing:
                    raise SchemaMismatch(missing)
                return list(reader), None
        except OSError as exc:
            raise FileUnreadable(f"cannot read {path}: {exc}") from exc
        except csv.Error as exc:
            raise FileUnreadable(f"cannot parse {path}: {exc}") from exc
    if fmt == "json":
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise FileUnreadable(f"cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise FileUnreadable(f"cannot parse {path}: {exc}") from exc
        embedded_span = None
        if isinstance(data, dict) and "articles" in data:
            if data.get("span"):
                embedded_span = (int(data["span"][0]), int(data["span"][1]))
            data = data["articles"]
        if not isinstance(data, list):
            raise FileUnreadable(f"{path}: expected an array of article objects")
        if data and isinstance(data[0], dict):
            missing = [c for c in colmap.columns().values() if c not in data[0]]
            if missing:
                raise SchemaMismatch(missing)
        return data, embedded_span
    raise ValueError(f"unsupported format {fmt!r}")


def load_corpus(
    path: str | Path,
    fmt: str | None = None,
    colmap: ColumnMap | None = None,
    span: tuple[int, int] | None = None,
) -> tuple[Corpus, ValidationReport]:
    """Load and validate a corpus file.

    Rows violating article invariants are rejected and listed in the report;
    references to absent ids and self-references are dropped and counted.
    ``span`` restricts accepted publication years; when omitted it is derived
    from the loaded data.
    """
    path = Path(path)
    if fmt is None:
        fmt = "json" if path.suffix.lower() == ".json" else "csv"
    colmap = colmap or ColumnMap()
    if not path.exists():
        raise FileUnreadable(f"no such file: {path}")

    rows, embedded_span = _read_rows(path, fmt, colmap)
    if span is None:
        span = embedded_span
    report = ValidationReport(rows_total=len(rows))

    articles: list[Article] = []
    seen: set[str] = set()
    for idx, raw in enumerate(rows):
        if not isinstance(raw, dict):
            report.reject(idx, None, ["row is not an object"])
            continue
        article, errors = _row_to_article(raw, colmap)
        if article is None:
            report.reject(idx, str(raw.get(colmap.id) or "") or None, errors)
            continue
        if article.id in seen:
            report.reject(idx, article.id, ["duplicate id"])
            continue
        if span is not None and not (span[0] <= article.year <= span[1]):
            report.reject(idx, article.id, [f"year {article.year} outside span {span[0]}-{span[1]}"])
            continue
        seen.add(article.id)
        articles.append(article)

    if not articles:
        raise EmptyCorpus(f"{path}: no valid articles")

    # Resolve references against the retained id set; drop what cannot resolve.
    valid_ids = {a.id for a in articles}
    resolved: list[Article] = []
    for a in articles:
        kept = []
        for ref in dict.fromkeys(a.references):
            if ref == a.id:
                report.dropped_references.append({"id": a.id, "ref": ref, "reason": "self-reference"})
            elif ref not in valid_ids:
                report.dropped_references.append({"id": a.id, "ref": ref, "reason": "unknown-id"})
            else:
                kept.append(ref)
        resolved.append(replace(a, references=tuple(sorted(kept))))

    report.rows_loaded = len(resolved)
    if span is None:
        years = [a.year for a in resolved]
        span = (min(years), max(years))
    return Corpus(resolved, span), report


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write the canonical JSON form (round-trips through load_corpus)."""
    Path(path).write_text(canonical_json(corpus.to_dict()), encoding="utf-8")


def corpus_checksum(corpus: Corpus) -> str:
    """Stable fingerprint of a corpus snapshot, used to stamp pipeline artifacts."""
    digest = hashlib.sha256(canonical_json(corpus.to_dict()).encode("utf-8"))
    return digest.hexdigest()


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


@dataclass
class CitationGraph:
    """Directed citation edges plus the derived undirected adjacency."""

    nodes: list[str]
    directed_edges: set[tuple[str, str]]
    adjacency: dict[str, set[str]]

    def degree(self, node: str) -> int:
        return len(self.adjacency[node])

    def undirected_edges(self) -> set[tuple[str, str]]:
        return {(min(u, v), max(u, v)) for u, v in self.directed_edges}


def build_citation_graph(corpus: Corpus) -> CitationGraph:
    """Node per article; directed edge (u, v) iff v is in u's references."""
    nodes = list(corpus.ids)
    adjacency: dict[str, set[str]] = {i: set() for i in nodes}
    directed: set[tuple[str, str]] = set()
    for a in corpus.articles:
        for ref in a.references:
            directed.add((a.id, ref))
            adjacency[a.id].add(ref)
            adjacency[ref].add(a.id)
    return CitationGraph(nodes=nodes, directed_edges=directed, adjacency=adjacency)
