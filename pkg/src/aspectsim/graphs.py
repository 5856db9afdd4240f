"""Small graph routines used by clustering, similarity networks, and exact mode.

All functions work on plain dict adjacency (node -> set of neighbors) so they
are usable both for the citation graph and for match-pair subgraphs.
"""

from __future__ import annotations

from collections import deque


class UnionFind:
    """Disjoint sets with path compression and union by size."""

    def __init__(self, items=()):
        self.parent: dict = {}
        self.size: dict = {}
        for item in items:
            self.add(item)

    def add(self, item) -> None:
        if item not in self.parent:
            self.parent[item] = item
            self.size[item] = 1

    def find(self, item):
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def connected_components(pairs, universe=()) -> list[set]:
    """Components of the undirected graph formed by ``pairs``.

    Nodes from ``universe`` that touch no pair come back as singletons.
    """
    uf = UnionFind(universe)
    for u, v in pairs:
        uf.add(u)
        uf.add(v)
        uf.union(u, v)
    groups: dict = {}
    for node in uf.parent:
        groups.setdefault(uf.find(node), set()).add(node)
    return list(groups.values())


def betweenness(adjacency: dict) -> dict:
    """Exact betweenness centrality on an unweighted undirected graph.

    Brandes' accumulation over BFS shortest-path DAGs. Each unordered node
    pair contributes once, so a path a-b-c gives b a score of 1.
    """
    nodes = list(adjacency)
    score = {v: 0.0 for v in nodes}
    for source in nodes:
        stack: list = []
        preds: dict = {v: [] for v in nodes}
        sigma = {v: 0 for v in nodes}
        dist = {v: -1 for v in nodes}
        sigma[source] = 1
        dist[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adjacency[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = {v: 0.0 for v in nodes}
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += (sigma[v] / sigma[w]) * (1.0 + delta[w])
            if w != source:
                score[w] += delta[w]
    # Each unordered pair was visited from both endpoints.
    return {v: s / 2.0 for v, s in score.items()}


def pairs_within_two_hops(adjacency: dict) -> set[tuple]:
    """All unordered node pairs at undirected distance 1 or 2."""
    out: set[tuple] = set()
    for u, neighbors in adjacency.items():
        reach = set(neighbors)
        for n in neighbors:
            reach.update(adjacency[n])
        reach.discard(u)
        for v in reach:
            if u < v:
                out.add((u, v))
            else:
                out.add((v, u))
    return out
