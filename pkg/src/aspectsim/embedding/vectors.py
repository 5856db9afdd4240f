"""Aspect identifiers, the per-aspect vector container, and vector file IO."""

from __future__ import annotations

import json
from enum import Enum
from pathlib import Path

import numpy as np
from scipy import sparse

from ..errors import FileUnreadable, MissingVector, UnknownId


class AspectId(str, Enum):
    """The four separately embeddable aspects of an article."""

    TOPOLOGY = "topology"
    TEXT = "text"
    AUTHORS = "authors"
    NUMERIC = "numeric"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


ASPECTS = (AspectId.TOPOLOGY, AspectId.TEXT, AspectId.AUTHORS, AspectId.NUMERIC)


class AspectVectors:
    """One embedding vector per article for a single aspect.

    Rows are L2-normalized. Articles in ``sentinels`` carry the
    zero-information vector (all zeros) and score cosine 0 against
    everything, themselves included.
    """

    def __init__(self, aspect, ids, matrix, sentinels=(), meta=None):
        self.aspect = AspectId(aspect)
        self.ids: tuple[str, ...] = tuple(ids)
        self.matrix = matrix
        self.sentinels: frozenset[str] = frozenset(sentinels)
        self.meta: dict = dict(meta or {})
        self._index = {article_id: i for i, article_id in enumerate(self.ids)}
        if matrix.shape[0] != len(self.ids):
            raise ValueError("matrix rows do not match id count")

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[1])

    def __len__(self) -> int:
        return len(self.ids)

    def index(self, article_id: str) -> int:
        try:
            return self._index[article_id]
        except KeyError:
            raise UnknownId(article_id) from None

    def vector(self, article_id: str) -> np.ndarray:
        """Dense 1-D vector for one article."""
        row = self.matrix[self.index(article_id)]
        if sparse.issparse(row):
            return np.asarray(row.todense()).ravel()
        return np.asarray(row).ravel()

    def is_sentinel(self, article_id: str) -> bool:
        return article_id in self.sentinels


def l2_normalize_rows(matrix):
    """Normalize rows to unit L2 norm; zero rows are left zero.

    Returns the normalized matrix and the indices of zero rows.
    """
    if sparse.issparse(matrix):
        matrix = sparse.csr_matrix(matrix, dtype=np.float64)
        norms = np.sqrt(np.asarray(matrix.multiply(matrix).sum(axis=1))).ravel()
        zero = np.flatnonzero(norms == 0.0)
        scale = np.ones_like(norms)
        nonzero = norms > 0
        scale[nonzero] = 1.0 / norms[nonzero]
        out = sparse.diags(scale) @ matrix
        out = sparse.csr_matrix(out)
        out.eliminate_zeros()
        return out, zero
    matrix = np.asarray(matrix, dtype=np.float64)
    norms = np.linalg.norm(matrix, axis=1)
    zero = np.flatnonzero(norms == 0.0)
    scale = np.ones_like(norms)
    nonzero = norms > 0
    scale[nonzero] = 1.0 / norms[nonzero]
    return matrix * scale[:, None], zero


def save_vectors(vectors: AspectVectors, path: str | Path) -> None:
    """Persist an AspectVectors as .npz (dense or CSR parts plus metadata)."""
    path = Path(path)
    header = json.dumps(
        {
            "aspect": vectors.aspect.value,
            "ids": list(vectors.ids),
            "sentinels": sorted(vectors.sentinels),
            "meta": vectors.meta,
        }
    )
    if sparse.issparse(vectors.matrix):
        m = sparse.csr_matrix(vectors.matrix)
        np.savez_compressed(
            path,
            header=np.frombuffer(header.encode("utf-8"), dtype=np.uint8),
            kind=np.array(["csr"]),
            data=m.data,
            indices=m.indices,
            indptr=m.indptr,
            shape=np.array(m.shape),
        )
    else:
        np.savez_compressed(
            path,
            header=np.frombuffer(header.encode("utf-8"), dtype=np.uint8),
            kind=np.array(["dense"]),
            matrix=vectors.matrix,
        )


def load_vectors(path: str | Path) -> AspectVectors:
    path = Path(path)
    if not path.exists():
        raise FileUnreadable(f"no such file: {path}")
    with np.load(path, allow_pickle=False) as bundle:
        header = json.loads(bytes(bundle["header"]).decode("utf-8"))
        kind = str(bundle["kind"][0])
        if kind == "csr":
            matrix = sparse.csr_matrix(
                (bundle["data"], bundle["indices"], bundle["indptr"]),
                shape=tuple(bundle["shape"]),
            )
        else:
            matrix = bundle["matrix"]
    return AspectVectors(
        aspect=header["aspect"],
        ids=header["ids"],
        matrix=matrix,
        sentinels=header["sentinels"],
        meta=header["meta"],
    )


def read_imported_vectors(path: str | Path, ids) -> np.ndarray:
    """Read externally produced vectors and order them by ``ids``.

    Two formats are accepted: one record per line (article id followed by
    whitespace-separated floats) or a JSON object mapping id to an array.
    Raises MissingVector for any article the file does not cover.
    """
    path = Path(path)
    if not path.exists():
        raise FileUnreadable(f"no such file: {path}")
    raw: dict[str, list[float]] = {}
    text = path.read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FileUnreadable(f"cannot parse {path}: {exc}") from exc
        for key, values in data.items():
            raw[str(key)] = [float(v) for v in values]
    else:
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) < 2:
                raise FileUnreadable(f"{path}:{lineno}: expected id followed by floats")
            try:
                raw[parts[0]] = [float(v) for v in parts[1:]]
            except ValueError as exc:
                raise FileUnreadable(f"{path}:{lineno}: {exc}") from exc

    rows = []
    dim = None
    for article_id in ids:
        if article_id not in raw:
            raise MissingVector(article_id)
        vec = raw[article_id]
        if dim is None:
            dim = len(vec)
        elif len(vec) != dim:
            raise FileUnreadable(f"{path}: inconsistent vector length for {article_id!r}")
        rows.append(vec)
    return np.asarray(rows, dtype=np.float64)
