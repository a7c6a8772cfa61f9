import json
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, given, settings

import locdim.construct as construct_mod
from locdim.clique import clique_number
from locdim.construct import (
    Chooser, ConstructionState, NoAdmissibleChoice, construct_lars, counting_checks, prune,
    replay_log, run_clique_processes, run_process_1, run_process_gamma, tau,
)
from locdim.dims import Variant, dimension
from locdim.graph import GraphError, bits, from_edges, gtw, knr, mask_of, path
from locdim.packing import pack_all
from locdim.verify import bound

from conftest import brute_lars, graphs


def k4_pendants(p):
    return from_edges(4 + p, list(combinations(range(4), 2)) + [(0, 4 + k) for k in range(p)])


def near_clique_with_cliques(extra: int):
    """knr(5,1) on 0..4, K_4 on 5..8 joined by 0-5; optionally K_4 on 9..12 joined by 1-9."""
    edges = knr(5, 1).edges() + [(a + 5, b + 5) for a, b in combinations(range(4), 2)] + [(0, 5)]
    n = 9
    if extra:
        edges += [(a + 9, b + 9) for a, b in combinations(range(4), 2)] + [(1, 9)]
        n = 13
    return from_edges(n, edges)


def test_tau_examples():
    G = near_clique_with_cliques(0)
    D = pack_all(G)
    X = D.layer(1)[0]
    assert X.vertices == (0, 1, 2, 3, 4)
    assert tau(G, X, []) == []
    assert tau(G, X, list(D.layer(4))) == list(D.layer(4))
    G2 = near_clique_with_cliques(1)
    D2 = pack_all(G2)
    got = tau(G2, D2.layer(1)[0], list(D2.layer(4)))
    assert [Y.vertices for Y in got] == [(5, 6, 7, 8), (9, 10, 11, 12)]
    # no edges at all
    lonely = from_edges(9, knr(5, 1).edges() + [(a + 5, b + 5) for a, b in combinations(range(4), 2)])
    assert tau(lonely, X, list(D.layer(4))) == []


def test_tau_layer_mismatch():
    D = pack_all(near_clique_with_cliques(0))
    Y = list(D.layer(4))
    with pytest.raises(GraphError):
        tau(near_clique_with_cliques(0), Y[0], Y)


def test_process_1_single_touching_clique():
    G = near_clique_with_cliques(0)
    D = pack_all(G)
    state = run_process_1(G, D, ConstructionState.fresh(D))
    (entry,) = state.log
    assert entry["branch"] == "tau1"
    assert entry["excluded"] == [1] and entry["pairs"] == [[5, 6]] and entry["anchors"] == [0]
    S = set(bits(state.S))
    assert len(S & {0, 1, 2, 3, 4}) == 4 and len(S & {5, 6, 7, 8}) == 2
    assert state.Y == []


def test_process_1_two_touching_cliques():
    G = near_clique_with_cliques(1)
    D = pack_all(G)
    state = run_process_1(G, D, ConstructionState.fresh(D))
    (entry,) = state.log
    assert entry["branch"] == "tau2"
    # dropping x_1 = 0 or x_2 = 1 would cut a clique off, so x_3 = 2 goes
    assert entry["excluded"] == [2]
    assert bits(state.S).__next__() == 0
    assert set(bits(state.S)) == {0, 1, 3, 4, 7, 8, 11, 12}
    res = construct_lars(G)
    assert res.valid and res.size == 8 == bound(13, 4)


def test_process_1_empty_layer_is_noop():
    G = gtw(2, 4)
    D = pack_all(G)
    state = run_process_1(G, D, ConstructionState.fresh(D))
    assert state.S == 0 and state.log == []


def test_process_gamma_examples():
    G = gtw(2, 4)
    D = pack_all(G)
    state = ConstructionState.fresh(D)
    run_process_gamma(G, D, state, 2)
    assert state.S == 0
    run_process_gamma(G, D, state, 3)
    assert set(bits(state.S)) == {2, 3, 4}
    assert state.log[-1]["excluded"] == [0, 1]

    G = gtw(2, 3)
    D = pack_all(G)
    state = run_process_gamma(G, D, ConstructionState.fresh(D), 2)
    assert set(bits(state.S)) == {2, 3}
    with pytest.raises(GraphError):
        run_process_gamma(G, D, state, 3)


def test_clique_processes_examples():
    G = gtw(2, 4)
    D = pack_all(G)
    state = ConstructionState.fresh(D)
    run_process_gamma(G, D, state, 3)
    run_clique_processes(G, D, state)
    assert set(bits(state.S)) == {2, 3, 4, 6}
    assert dimension(G, Variant.LOCAL_ADJACENCY) == 4

    G = k4_pendants(4)
    D = pack_all(G)
    state = ConstructionState.fresh(D)
    run_clique_processes(G, D, state)
    assert set(bits(state.S)) == {5, 6, 7}  # only the singleton union


def test_construct_gtw_2_4():
    res = construct_lars(gtw(2, 4))
    assert res.S == (2, 3, 4, 6)
    assert res.size == 4 == bound(7, 4) and res.valid and res.guaranteed


def test_construct_gtw_2_3_has_no_guarantee():
    res = construct_lars(gtw(2, 3))
    assert res.size == 3 and res.valid and not res.guaranteed
    assert res.size > bound(5, 3) == 2


def test_construct_pendant_family_overshoots_in_faithful_mode():
    G = k4_pendants(4)
    faithful = construct_lars(G, "faithful")
    assert faithful.size == 6 and faithful.valid
    assert faithful.bound == 5 and faithful.overshoot
    pruned = construct_lars(G, "pruned")
    assert pruned.valid and pruned.size <= 3
    assert brute_lars(G, pruned.S)


def test_construct_preconditions():
    with pytest.raises(GraphError):
        construct_lars(path(6))
    with pytest.raises(GraphError):
        construct_lars(from_edges(5, [(0, 1), (1, 2), (0, 2), (3, 4)]))
    with pytest.raises(ValueError):
        construct_lars(gtw(2, 4), "greedy")


def test_log_json_and_replay():
    res = construct_lars(near_clique_with_cliques(1))
    log = json.loads(res.log_json())
    assert replay_log(log) == res.faithful
    assert list(log[0]) == ["process", "layer", "copy", "branch", "excluded", "anchors", "pairs",
                            "consumed", "added"]


def test_chooser_odometer():
    c = Chooser()
    assert c.pick(["a", "b"]) == "a"
    assert c.pick(["x"]) == "x"
    assert c.pick([1, 2, 3]) == 1
    assert c.next_prefix() == [0, 0, 1]
    c = Chooser([1, 0, 2])
    c.pick("ab"), c.pick("x"), c.pick([1, 2, 3])
    assert c.next_prefix() is None


def test_backtracking_replays_after_a_rejected_set(monkeypatch):
    real = construct_mod.is_lars_mask
    calls = []

    def reject_first(G, S):
        calls.append(S)
        return len(calls) > 1 and real(G, S)

    monkeypatch.setattr(construct_mod, "is_lars_mask", reject_first)
    res = construct_lars(near_clique_with_cliques(0))
    assert res.attempts == 2
    assert res.faithful != tuple(bits(calls[0]))
    assert brute_lars(near_clique_with_cliques(0), res.S)


def test_no_admissible_choice_when_nothing_verifies(monkeypatch):
    monkeypatch.setattr(construct_mod, "is_lars_mask", lambda G, S: False)
    with pytest.raises(NoAdmissibleChoice) as err:
        construct_lars(gtw(2, 4))
    assert err.value.dump["omega"] == 4


def test_prune_keeps_validity():
    G = k4_pendants(4)
    S = prune(G, G.all_mask)
    assert brute_lars(G, bits(S))
    for v in bits(S):
        assert not brute_lars(G, bits(S & ~(1 << v)))


@settings(max_examples=150, deadline=None)
@given(graphs(min_n=4, max_n=10, connected=True))
def test_construction_is_valid_in_both_modes(G):
    w = clique_number(G)
    assume(w >= 3 and G.n >= w + 1)
    faithful = construct_lars(G, "faithful")
    pruned = construct_lars(G, "pruned")
    assert brute_lars(G, faithful.S) and brute_lars(G, pruned.S)
    assert set(pruned.S) <= set(faithful.S)
    assert replay_log(faithful.log) == faithful.S
    assert faithful.y_exhausted


@settings(max_examples=50, deadline=None)
@given(graphs(min_n=4, max_n=9, connected=True))
def test_construction_is_deterministic(G):
    w = clique_number(G)
    assume(w >= 3 and G.n >= w + 1)
    a, b = construct_lars(G), construct_lars(G)
    assert a.S == b.S and a.log_json() == b.log_json()


@pytest.mark.parametrize("t", range(2, 6))
@pytest.mark.parametrize("omega", range(4, 7))
def test_extremal_family_meets_bound(t, omega):
    G = gtw(t, omega)
    res = construct_lars(G, "faithful")
    assert res.valid and res.size == t * (omega - 2) == bound(G.n, omega)


def test_counting_examples():
    rows, _ = counting_checks(4, 2)
    assert rows[0].xi == Fraction(10, 3) and rows[0].case_bound == 3 and rows[0].holds
    assert rows[1].xi == 6 == rows[1].case_bound and rows[1].holds
    rows, _ = counting_checks(5, 2)
    assert rows[2].xi == 12 and rows[2].case_bound == 11


@pytest.mark.parametrize("omega", range(4, 13))
def test_counting_grid(omega):
    rows, r_checks = counting_checks(omega, 20)
    assert all(isinstance(r.xi, Fraction) and r.holds for r in rows)
    assert list(r_checks) == list(range(2, omega)) and all(r_checks.values())


def test_counting_rejects_small_omega():
    with pytest.raises(ValueError):
        counting_checks(3, 5)
