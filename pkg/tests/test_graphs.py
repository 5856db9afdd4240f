import numpy as np
import pytest

from aspectsim.graphs import betweenness, connected_components, pairs_within_two_hops

from helpers import closure_components, exhaustive_betweenness, random_adjacency


def as_sets(components):
    return sorted(tuple(sorted(c)) for c in components)


def test_components_chain_with_singletons():
    comps = connected_components({("1", "2"), ("2", "3")}, universe={"1", "2", "3", "4", "5"})
    assert as_sets(comps) == [("1", "2", "3"), ("4",), ("5",)]


def test_components_match_closure_oracle_randomized():
    rng = np.random.default_rng(11)
    for _ in range(40):
        n = int(rng.integers(2, 30))
        universe = {f"n{i}" for i in range(n)}
        pairs = set()
        for _ in range(int(rng.integers(0, 2 * n))):
            a, b = rng.choice(sorted(universe), size=2, replace=False)
            pairs.add((min(a, b), max(a, b)))
        assert as_sets(connected_components(pairs, universe)) == as_sets(
            closure_components(pairs, universe)
        )


def test_betweenness_path():
    adj = {"a": {"b"}, "b": {"a", "c"}, "c": {"b"}}
    assert betweenness(adj) == {"a": 0.0, "b": 1.0, "c": 0.0}


def test_betweenness_triangle():
    adj = {"a": {"b", "c"}, "b": {"a", "c"}, "c": {"a", "b"}}
    assert betweenness(adj) == {"a": 0.0, "b": 0.0, "c": 0.0}


def test_betweenness_star():
    adj = {"x": {"l1", "l2", "l3"}, "l1": {"x"}, "l2": {"x"}, "l3": {"x"}}
    scores = betweenness(adj)
    assert scores["x"] == 3.0
    assert scores["l1"] == scores["l2"] == scores["l3"] == 0.0


@pytest.mark.parametrize("seed", range(5))
def test_betweenness_matches_enumeration(seed):
    rng = np.random.default_rng(seed)
    adj = random_adjacency(int(rng.integers(2, 8)), rng)
    mine = betweenness(adj)
    oracle = exhaustive_betweenness(adj)
    for node in adj:
        assert mine[node] == pytest.approx(oracle[node], abs=1e-9)


def test_two_hop_pairs():
    adj = {"a": {"b"}, "b": {"a", "c"}, "c": {"b"}, "d": set()}
    assert pairs_within_two_hops(adj) == {("a", "b"), ("b", "c"), ("a", "c")}
