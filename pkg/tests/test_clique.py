from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings

from locdim.clique import clique_number, cliques_of_size, is_clique, max_clique
from locdim.graph import complete, cycle, gtw

from conftest import graphs, to_nx


def test_examples():
    assert clique_number(cycle(5)) == 2
    assert clique_number(complete(6)) == 6
    assert clique_number(gtw(3, 4)) == 4


def test_cliques_of_size_examples():
    assert len(list(cliques_of_size(complete(4), 3))) == 4
    assert list(cliques_of_size(cycle(5), 3)) == []
    G = gtw(2, 3)
    brute = [t for t in combinations(range(G.n), 3) if is_clique(G, t)]
    assert list(cliques_of_size(G, 3)) == brute == [(0, 1, 2), (0, 3, 4)]


@settings(max_examples=150)
@given(graphs(max_n=10))
def test_clique_number_matches_networkx(G):
    want = max((len(c) for c in nx.find_cliques(to_nx(G))), default=0)
    assert clique_number(G) == want
    assert is_clique(G, max_clique(G))


@settings(max_examples=80)
@given(graphs(max_n=8))
def test_cliques_of_size_is_lexicographic_enumeration(G):
    for k in range(1, G.n + 1):
        brute = [t for t in combinations(range(G.n), k) if is_clique(G, t)]
        assert list(cliques_of_size(G, k)) == brute


@settings(max_examples=80)
@given(graphs(max_n=8))
def test_clique_number_is_largest_nonempty_size(G):
    w = clique_number(G)
    assert next(cliques_of_size(G, w), None) is not None
    if w < G.n:
        assert next(cliques_of_size(G, w + 1), None) is None


@pytest.mark.parametrize("t", range(2, 6))
@pytest.mark.parametrize("omega", range(2, 7))
def test_gtw_clique_number(t, omega):
    assert clique_number(gtw(t, omega)) == omega


def test_within_mask():
    G = gtw(2, 4)
    assert clique_number(G, within=0b1100000) == 2
    assert list(cliques_of_size(G, 2, within=0b1100000)) == [(5, 6)]
