"""Citation-topology embedding: uniform random walks plus skip-gram training.

The trainer is single-threaded and fully deterministic for a fixed seed:
walk generation, negative sampling, and the minibatch update order all come
from one seeded generator, so two runs with identical inputs produce
bit-identical vectors.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy.special import expit
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ..corpus import CitationGraph
from .vectors import AspectId, AspectVectors

_BATCH = 1024
_LR_FLOOR_FRACTION = 1e-4


@dataclass(frozen=True)
class TopologyParams:
    """Training knobs for the topology embedder."""

    dim: int = 128
    walks_per_node: int = 10
    walk_length: int = 80
    window: int = 5
    negative_samples: int = 5
    epochs: int = 5
    learning_rate: float = 0.025
    rng_seed: int = 0

    def validate(self) -> None:
        numeric = {
            "dim": self.dim,
            "walks_per_node": self.walks_per_node,
            "walk_length": self.walk_length,
            "window": self.window,
            "negative_samples": self.negative_samples,
            "epochs": self.epochs,
            "learning_rate": self.learning_rate,
        }
        for name, value in numeric.items():
            if value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")
        if self.window >= self.walk_length:
            raise ValueError("window must be smaller than walk_length")


class TopologyEmbedder(BaseEstimator):
    """Node embedder over the undirected citation graph.

    fit() trains on a CitationGraph; transform() looks up vectors for the
    requested node ids. Isolated nodes keep their seeded random
    initialization (normalized) because no walk pair ever updates them.
    """

    def __init__(
        self,
        dim: int = 128,
        walks_per_node: int = 10,
        walk_length: int = 80,
        window: int = 5,
        negative_samples: int = 5,
        epochs: int = 5,
        learning_rate: float = 0.025,
        rng_seed: int = 0,
    ):
        self.dim = dim
        self.walks_per_node = walks_per_node
        self.walk_length = walk_length
        self.window = window
        self.negative_samples = negative_samples
        self.epochs = epochs
        self.learning_rate = learning_rate
        self.rng_seed = rng_seed

    def _params(self) -> TopologyParams:
        return TopologyParams(
            dim=self.dim,
            walks_per_node=self.walks_per_node,
            walk_length=self.walk_length,
            window=self.window,
            negative_samples=self.negative_samples,
            epochs=self.epochs,
            learning_rate=self.learning_rate,
            rng_seed=self.rng_seed,
        )

    def fit(self, graph: CitationGraph, y=None):
        params = self._params()
        params.validate()
        rng = np.random.default_rng(params.rng_seed)

        ids = list(graph.nodes)
        index = {node: i for i, node in enumerate(ids)}
        n = len(ids)
        neighbors = [
            np.array(sorted(index[v] for v in graph.adjacency[node]), dtype=np.int64)
            for node in ids
        ]

        table = (rng.random((n, params.dim)) - 0.5) / params.dim
        walks = _generate_walks(neighbors, params, rng)
        if walks.size:
            _train_skipgram(table, walks, params, rng)

        norms = np.linalg.norm(table, axis=1, keepdims=True)
        norms[norms == 0.0] = 1.0
        self.ids_ = tuple(ids)
        self.embedding_ = table / norms
        return self

    def transform(self, ids) -> np.ndarray:
        check_is_fitted(self, "embedding_")
        index = {node: i for i, node in enumerate(self.ids_)}
        rows = [index[i] for i in ids]
        return self.embedding_[rows]


def _generate_walks(neighbors, params: TopologyParams, rng) -> np.ndarray:
    """Uniform random walks from every non-isolated node, one matrix row each."""
    n = len(neighbors)
    degrees = np.array([len(nb) for nb in neighbors], dtype=np.int64)
    active = np.flatnonzero(degrees > 0)
    if active.size == 0:
        return np.empty((0, params.walk_length), dtype=np.int64)

    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(degrees, out=offsets[1:])
    flat = np.concatenate([nb for nb in neighbors if nb.size]) if degrees.sum() else np.empty(0, np.int64)

    rows = []
    for _ in range(params.walks_per_node):
        starts = active[rng.permutation(active.size)]
        walk = np.empty((starts.size, params.walk_length), dtype=np.int64)
        walk[:, 0] = starts
        current = starts
        for step in range(1, params.walk_length):
            pick = (rng.random(current.size) * degrees[current]).astype(np.int64)
            current = flat[offsets[current] + pick]
            walk[:, step] = current
        rows.append(walk)
    return np.concatenate(rows, axis=0)


def _train_skipgram(table: np.ndarray, walks: np.ndarray, params: TopologyParams, rng) -> None:
    """Skip-gram with negative sampling over walk windows, in-place on ``table``."""
    n, dim = table.shape
    context = np.zeros((n, dim))

    centers, contexts = _window_pairs(walks, params.window)
    total_updates = params.epochs * centers.size
    if total_updates == 0:
        return
    # Gradients accumulate over stale values inside a batch, so keep the
    # expected per-node collision count small on tiny graphs.
    batch = min(_BATCH, max(32, 4 * n))

    # Noise distribution: walk frequency smoothed by 0.75, as usual for SGNS.
    counts = np.bincount(walks.ravel(), minlength=n).astype(np.float64)
    noise = counts**0.75
    noise_cdf = np.cumsum(noise / noise.sum())

    lr0 = params.learning_rate
    seen = 0
    for _ in range(params.epochs):
        for start in range(0, centers.size, batch):
            c = centers[start : start + batch]
            o = contexts[start : start + batch]
            b = c.size
            neg = np.searchsorted(noise_cdf, rng.random((b, params.negative_samples)))
            np.minimum(neg, n - 1, out=neg)

            progress = seen / total_updates
            lr = lr0 * max(_LR_FLOOR_FRACTION, 1.0 - progress)
            seen += b

            v = table[c]
            u_pos = context[o]
            u_neg = context[neg]

            g_pos = expit(np.einsum("bd,bd->b", v, u_pos)) - 1.0
            g_neg = expit(np.einsum("bkd,bd->bk", u_neg, v))

            grad_v = g_pos[:, None] * u_pos + np.einsum("bk,bkd->bd", g_neg, u_neg)
            np.add.at(table, c, -lr * grad_v)
            np.add.at(context, o, -lr * (g_pos[:, None] * v))
            np.add.at(
                context,
                neg.ravel(),
                (-lr * (g_neg[..., None] * v[:, None, :])).reshape(-1, dim),
            )


def _window_pairs(walks: np.ndarray, window: int) -> tuple[np.ndarray, np.ndarray]:
    """(center, context) index pairs for every walk position and window offset."""
    centers = []
    contexts = []
    for offset in range(1, window + 1):
        left = walks[:, :-offset].ravel()
        right = walks[:, offset:].ravel()
        centers.append(left)
        contexts.append(right)
        centers.append(right)
        contexts.append(left)
    return np.concatenate(centers), np.concatenate(contexts)


def embed_topology(graph: CitationGraph, params: TopologyParams | None = None) -> AspectVectors:
    """Train the topology aspect and package it as AspectVectors."""
    params = params or TopologyParams()
    embedder = TopologyEmbedder(**asdict(params))
    embedder.fit(graph)
    return AspectVectors(
        aspect=AspectId.TOPOLOGY,
        ids=embedder.ids_,
        matrix=embedder.embedding_,
        meta={"source": "builtin", "params": asdict(params), "seed": params.rng_seed},
    )
