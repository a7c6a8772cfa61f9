import random
from itertools import combinations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings

from locdim.dims import Variant, batch_dims, dimension, is_resolving, min_resolving_set
from locdim.graph import GraphError, complete, cycle, from_edges, gtw, labeled_graphs, path

from conftest import graphs, to_nx

V = Variant


def brute_resolves(G, S, variant):
    """Definition check through networkx distances and adjacency."""
    H = to_nx(G)
    dist = dict(nx.all_pairs_shortest_path_length(H))
    rest = [v for v in range(G.n) if v not in S]
    for u, v in combinations(rest, 2):
        if variant.local and not H.has_edge(u, v):
            continue
        if variant.uses_distance:
            ok = any(dist[u][w] != dist[v][w] for w in S)
        else:
            ok = any(H.has_edge(w, u) != H.has_edge(w, v) for w in S)
        if not ok:
            return False
    return True


def brute_dim(G, variant):
    for k in range(G.n + 1):
        for S in combinations(range(G.n), k):
            if brute_resolves(G, S, variant):
                return k, S


def test_is_resolving_examples():
    K3 = complete(3)
    assert not is_resolving(K3, {0}, V.LOCAL_ADJACENCY)
    assert is_resolving(K3, {0, 1}, V.LOCAL_ADJACENCY)
    # a_2, a_3, b_1, b_2 of gtw(2, 4)
    assert is_resolving(gtw(2, 4), {2, 3, 4, 5}, V.LOCAL_ADJACENCY)
    assert brute_resolves(gtw(2, 4), (2, 3, 4, 5), V.LOCAL_ADJACENCY)


def test_is_resolving_errors():
    with pytest.raises(GraphError):
        is_resolving(path(3), {7}, V.METRIC)
    with pytest.raises(GraphError):
        is_resolving(from_edges(3, [(0, 1)]), {0}, V.LOCAL_METRIC)


def test_min_resolving_set_examples():
    assert dimension(complete(5), V.LOCAL_METRIC) == 4
    assert dimension(path(4), V.LOCAL_METRIC) == 1
    assert dimension(gtw(2, 4), V.LOCAL_ADJACENCY) == 4
    # frozen from the brute oracle
    assert brute_dim(cycle(5), V.LOCAL_ADJACENCY) == (2, (0, 1))
    w = min_resolving_set(cycle(5), V.LOCAL_ADJACENCY)
    assert (w.size, w.set) == (2, (0, 1))


def test_disconnected_distance_variant_rejected():
    with pytest.raises(GraphError):
        dimension(from_edges(4, [(0, 1), (2, 3)]), V.METRIC)
    # adjacency variants are defined without distances
    assert dimension(from_edges(4, [(0, 1), (2, 3)]), V.LOCAL_ADJACENCY) == 2


def test_variant_parse():
    assert Variant.parse("local-adj") is V.LOCAL_ADJACENCY
    assert Variant.parse("adj") is V.ADJACENCY
    with pytest.raises(ValueError):
        Variant.parse("fractional")


@settings(max_examples=120, deadline=None)
@given(graphs(min_n=2, max_n=7, connected=True))
def test_min_resolving_set_matches_brute_force(G):
    for variant in Variant:
        w = min_resolving_set(G, variant)
        assert (w.size, w.set) == brute_dim(G, variant)


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=2, max_n=9, connected=True))
def test_dimension_chain_and_witness(G):
    d = {v: min_resolving_set(G, v) for v in Variant}
    for v, w in d.items():
        assert is_resolving(G, w.set, v)
    assert d[V.LOCAL_METRIC].size <= d[V.METRIC].size <= d[V.ADJACENCY].size
    assert d[V.LOCAL_METRIC].size <= d[V.LOCAL_ADJACENCY].size <= d[V.ADJACENCY].size


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=9, connected=True))
def test_bipartite_local_dimension_is_one(G):
    if nx.is_bipartite(to_nx(G)):
        assert dimension(G, V.LOCAL_METRIC) == 1


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=8, connected=True))
def test_supersets_of_resolving_sets_resolve(G):
    rng = random.Random(G.n * 1000 + G.num_edges)
    for v in Variant:
        S = set(min_resolving_set(G, v).set)
        extra = rng.sample(range(G.n), rng.randint(0, G.n))
        assert is_resolving(G, S | set(extra), v)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_batch_matches_scalar_exhaustively(n):
    gs = [G for _, G in labeled_graphs(n)]
    table = batch_dims(np.array([G.masks for G in gs]), n)
    for k, G in enumerate(gs):
        connected = nx.is_connected(to_nx(G))
        for v in Variant:
            got = int(table[v][k])
            if v.uses_distance and not connected:
                assert got == -1
            else:
                assert got == dimension(G, v)


@pytest.mark.parametrize("n", [6, 7, 8])
def test_batch_matches_scalar_sampled(n):
    rng = random.Random(n)
    gs = []
    while len(gs) < 150:
        p = rng.choice([0.3, 0.5, 0.7])
        G = from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])
        gs.append(G)
    table = batch_dims(np.array([G.masks for G in gs]), n)
    for k, G in enumerate(gs):
        connected = nx.is_connected(to_nx(G))
        for v in Variant:
            if v.uses_distance and not connected:
                assert table[v][k] == -1
            else:
                assert table[v][k] == dimension(G, v)
