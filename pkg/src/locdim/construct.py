"""Build a local adjacency resolving set from the layered packing.

The construction walks the near-clique layers ``1 .. w-1`` in order.  Every
copy ``X`` looks at the clique copies of layer ``w`` that are still unused
and touch it (``tau``), puts most of ``X`` into ``S``, and consumes those
clique copies leaving one anchored pair per clique outside ``S``.  The clique
layers ``w+1 .. 2w-2`` then put all but one vertex of each copy into ``S``,
and finally every singleton of layer ``2w-1`` joins ``S``.

Wherever several choices are admissible the smallest index is tried first.
If the finished set does not verify, the run is replayed with the next
choice vector (depth-first over all choice points), so a returned set is
always a verified local adjacency resolving set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .clique import clique_number
from .graph import Graph, GraphError, bits, is_connected, mask_of
from .packing import Decomposition, PatternCopy, pack_all

__all__ = [
    "NoAdmissibleChoice",
    "Chooser",
    "ConstructionState",
    "ConstructionResult",
    "CountingCheck",
    "tau",
    "is_lars_mask",
    "run_process_1",
    "run_process_gamma",
    "run_clique_processes",
    "construct_lars",
    "prune",
    "replay_log",
    "counting_checks",
]


class NoAdmissibleChoice(RuntimeError):
    def __init__(self, message: str, dump: dict | None = None):
        super().__init__(message)
        self.dump = dump or {}


class _DeadEnd(Exception):
    pass


class Chooser:
    """Replays a prefix of choice indices, then takes option 0 everywhere."""

    def __init__(self, prefix=()):
        self.prefix = list(prefix)
        self.taken: list[int] = []
        self.counts: list[int] = []

    def pick(self, options: list):
        if not options:
            raise _DeadEnd
        k = len(self.taken)
        idx = self.prefix[k] if k < len(self.prefix) else 0
        self.taken.append(idx)
        self.counts.append(len(options))
        return options[idx]

    def next_prefix(self) -> list[int] | None:
        for p in range(len(self.taken) - 1, -1, -1):
            if self.taken[p] + 1 < self.counts[p]:
                return self.taken[:p] + [self.taken[p] + 1]
        return None


@dataclass
class ConstructionState:
    S: int = 0  # vertex bitmask
    Y: list[int] = field(default_factory=list)  # indices into layer w, in order
    gamma: int = 1
    i: int = 0
    log: list[dict] = field(default_factory=list)
    chooser: Chooser = field(default_factory=Chooser)

    @classmethod
    def fresh(cls, D: Decomposition, chooser: Chooser | None = None) -> "ConstructionState":
        return cls(Y=list(range(len(D.layer(D.omega)))), chooser=chooser or Chooser())

    def add(self, mask: int):
        self.S |= mask


def is_lars_mask(G: Graph, S: int) -> bool:
    """Local adjacency resolving check on a bitmask ``S``."""
    m = G.masks
    out = G.all_mask & ~S
    for u in bits(out):
        for v in bits(m[u] & out & ~((1 << (u + 1)) - 1)):
            if not (m[u] ^ m[v]) & S:
                return False
    return True


def tau(G: Graph, X: PatternCopy, Y: list[PatternCopy]) -> list[PatternCopy]:
    """Members of ``Y`` with at least one edge into ``X``, in ``Y`` order."""
    if len(X) == 0 or not Y:
        return []
    omega = len(Y[0])
    if X.layer >= omega or any(c.layer != omega for c in Y):
        raise GraphError("tau pairs a near-clique copy with clique copies of layer omega")
    nb = 0
    for x in X.labels:
        nb |= G.masks[x]
    return [c for c in Y if nb & c.mask]


def _anchor(G: Graph, X: PatternCopy, labels, y1: int, y2: int) -> int | None:
    """Smallest label whose vertex sees exactly one of ``y1, y2``."""
    for l in labels:
        x = X.x(l)
        if (G.masks[x] >> y1 & 1) + (G.masks[x] >> y2 & 1) == 1:
            return l
    return None


def _anchored_pairs(G: Graph, X: PatternCopy, labels, Y: PatternCopy):
    out = []
    for y1, y2 in combinations(Y.vertices, 2):
        a = _anchor(G, X, labels, y1, y2)
        if a is not None:
            out.append(((y1, y2), a))
    return out


def _tau_indices(G: Graph, D: Decomposition, X: PatternCopy, Y: list[int]) -> list[int]:
    nb = 0
    for x in X.labels:
        nb |= G.masks[x]
    cliques = D.layer(D.omega)
    return [k for k in Y if nb & cliques[k].mask]


def _consume(state: ConstructionState, T: list[int]):
    state.Y = [k for k in state.Y if k not in T]


def _near_clique_step(G: Graph, D: Decomposition, state: ConstructionState, gamma: int, idx: int):
    w = D.omega
    X = D.layer(gamma)[idx]
    cliques = D.layer(w)
    T = _tau_indices(G, D, X, state.Y)
    pick = state.chooser.pick
    entry = {"process": gamma, "layer": gamma, "copy": idx + 1, "branch": None,
             "excluded": [], "anchors": [], "pairs": [], "consumed": [k + 1 for k in T]}
    all_labels = range(1, w + 2)
    if len(T) == 0:
        entry["branch"] = "tau0"
        if gamma == 1:
            excluded = (X.x(w), X.x(w + 1))
        else:
            # any full-degree vertex with any vertex missing the apex; canonical first
            full = [X.x(l) for l in range(1, w - gamma + 1)]
            part = [X.x(l) for l in range(w - gamma + 1, w + 1)]
            canon = (X.x(w - gamma), X.x(w - gamma + 1))
            options = [canon] + [(f, p) for f in full for p in part if (f, p) != canon]
            excluded = pick(options)
        entry["excluded"] = list(excluded)
        added = X.mask & ~mask_of(excluded)
    elif len(T) == 1:
        entry["branch"] = "tau1"
        Y1 = cliques[T[0]]
        options = []
        seen = set()
        if gamma == 1:
            # (l1 anchor, l2 excluded) distinct, both over [w+1]
            for l1 in all_labels:
                for l2 in all_labels:
                    if l2 == l1:
                        continue
                    for pair in combinations(Y1.vertices, 2):
                        if (l2, pair) in seen:
                            continue
                        x = X.x(l1)
                        if (G.masks[x] >> pair[0] & 1) + (G.masks[x] >> pair[1] & 1) == 1:
                            seen.add((l2, pair))
                            options.append((l2, pair, l1))
        else:
            for l1 in range(1, w + 1):
                rest = X.mask & ~(1 << X.x(l1))
                if not _edges_into(G, rest, Y1.mask):
                    continue
                anchors = [l for l in all_labels if l != l1]
                for pair, a in _anchored_pairs(G, X, anchors, Y1):
                    options.append((l1, pair, a))
        excl_label, pair, anchor = pick(options)
        entry.update(excluded=[X.x(excl_label)], anchors=[X.x(anchor)], pairs=[list(pair)])
        added = (X.mask & ~(1 << X.x(excl_label))) | (Y1.mask & ~mask_of(pair))
    elif len(T) == 2:
        entry["branch"] = "tau2"
        Y1, Y2 = cliques[T[0]], cliques[T[1]]
        if gamma == 1:
            cands = []
            for l in all_labels:
                keep = (X.mask & ~(1 << X.x(l))) | Y1.mask | Y2.mask
                if _connected_mask(G, keep):
                    cands.append(l)
        else:
            cands = []
            for l in range(1, w + 1):
                rest = X.mask & ~(1 << X.x(l))
                if _edges_into(G, rest, Y1.mask) and _edges_into(G, rest, Y2.mask):
                    cands.append(l)
        l = pick(cands)
        anchors = [z for z in all_labels if z != l]
        p1, a1 = pick(_anchored_pairs(G, X, anchors, Y1))
        p2, a2 = pick(_anchored_pairs(G, X, anchors, Y2))
        entry.update(excluded=[X.x(l)], anchors=[X.x(a1), X.x(a2)], pairs=[list(p1), list(p2)])
        added = (X.mask & ~(1 << X.x(l))) | (Y1.mask & ~mask_of(p1)) | (Y2.mask & ~mask_of(p2))
    else:
        entry["branch"] = "tau3+"
        anchors = all_labels if gamma == 1 else range(1, w + 1)
        added = X.mask
        for k in T:
            Yk = cliques[k]
            pair, a = pick(_anchored_pairs(G, X, anchors, Yk))
            entry["anchors"].append(X.x(a))
            entry["pairs"].append(list(pair))
            added |= Yk.mask & ~mask_of(pair)
    _consume(state, T)
    entry["added"] = list(bits(added))
    state.add(added)
    state.log.append(entry)


def _edges_into(G: Graph, A: int, B: int) -> bool:
    for a in bits(A):
        if G.masks[a] & B:
            return True
    return False


def _connected_mask(G: Graph, within: int) -> bool:
    return bool(within) and is_connected(G, within)


def run_process_1(G: Graph, D: Decomposition, state: ConstructionState) -> ConstructionState:
    state.gamma = 1
    for idx in range(len(D.layer(1))):
        state.i = idx + 1
        _near_clique_step(G, D, state, 1, idx)
    return state


def run_process_gamma(G: Graph, D: Decomposition, state: ConstructionState, gamma: int) -> ConstructionState:
    if not 2 <= gamma <= D.omega - 1:
        raise GraphError(f"process index {gamma} outside 2..{D.omega - 1}")
    state.gamma = gamma
    for idx in range(len(D.layer(gamma))):
        state.i = idx + 1
        _near_clique_step(G, D, state, gamma, idx)
    return state


def run_clique_processes(G: Graph, D: Decomposition, state: ConstructionState) -> ConstructionState:
    w = D.omega
    for gamma in range(w, 2 * w - 2):
        state.gamma = gamma
        for idx, X in enumerate(D.layer(gamma + 1)):
            state.i = idx + 1
            drop = state.chooser.pick(list(X.labels)) if len(X) > 1 else X.x(1)
            added = X.mask & ~(1 << drop)
            state.add(added)
            state.log.append({"process": gamma, "layer": gamma + 1, "copy": idx + 1, "branch": "clique",
                              "excluded": [drop], "added": list(bits(added))})
    single = D.layer_mask(2 * w - 1)
    state.add(single)
    state.log.append({"process": 2 * w - 3, "layer": 2 * w - 1, "copy": None, "branch": "singletons",
                      "excluded": [], "added": list(bits(single))})
    return state


def prune(G: Graph, S: int) -> int:
    """Drop vertices (ascending id, repeated to a fixpoint) while ``S`` stays valid."""
    changed = True
    while changed:
        changed = False
        for v in bits(S):
            if is_lars_mask(G, S & ~(1 << v)):
                S &= ~(1 << v)
                changed = True
    return S


def replay_log(log: list[dict]) -> tuple[int, ...]:
    S = set()
    for entry in log:
        S.update(entry["added"])
    return tuple(sorted(S))


@dataclass(frozen=True)
class ConstructionResult:
    S: tuple[int, ...]
    faithful: tuple[int, ...]
    mode: str
    omega: int
    n: int
    bound: int
    valid: bool
    guaranteed: bool  # omega >= 4: the size bound is claimed for this input
    y_exhausted: bool
    attempts: int
    log: list[dict]
    decomposition: Decomposition

    @property
    def size(self) -> int:
        return len(self.S)

    @property
    def overshoot(self) -> bool:
        return self.size > self.bound

    def log_json(self) -> str:
        return json.dumps(self.log, separators=(",", ":"))


def _run_once(G: Graph, D: Decomposition, chooser: Chooser) -> ConstructionState:
    state = ConstructionState.fresh(D, chooser)
    run_process_1(G, D, state)
    for gamma in range(2, D.omega):
        run_process_gamma(G, D, state, gamma)
    return run_clique_processes(G, D, state)


def construct_lars(G: Graph, mode: str = "faithful", *, omega: int | None = None,
                   decomposition: Decomposition | None = None,
                   max_attempts: int = 100_000) -> ConstructionResult:
    """Run the full construction and return a verified set.

    ``mode="pruned"`` additionally removes redundant vertices from the
    faithful set.  Raises :class:`NoAdmissibleChoice` when no choice vector
    yields a valid set within ``max_attempts`` replays.
    """
    if mode not in ("faithful", "pruned"):
        raise ValueError(f"unknown mode {mode!r}")
    if not is_connected(G):
        raise GraphError("construction needs a connected graph")
    w = clique_number(G) if omega is None else omega
    if w < 3 or G.n < w + 1:
        raise GraphError(f"construction needs omega >= 3 and n >= omega + 1 (n={G.n}, omega={w})")
    D = decomposition if decomposition is not None else pack_all(G, w)
    prefix: list[int] | None = []
    attempts = 0
    while prefix is not None:
        if attempts >= max_attempts:
            raise NoAdmissibleChoice(f"gave up after {attempts} replays",
                                     {"n": G.n, "edges": G.edges(), "omega": w})
        attempts += 1
        chooser = Chooser(prefix)
        try:
            state = _run_once(G, D, chooser)
        except _DeadEnd:
            prefix = chooser.next_prefix()
            continue
        if is_lars_mask(G, state.S):
            break
        prefix = chooser.next_prefix()
    else:
        raise NoAdmissibleChoice(
            f"no choice vector yields a valid set ({attempts} replays)",
            {"n": G.n, "edges": G.edges(), "omega": w,
             "layers": [[list(X.labels) for X in L] for L in D.layers]},
        )
    faithful = state.S
    final = prune(G, faithful) if mode == "pruned" else faithful
    return ConstructionResult(
        S=tuple(bits(final)),
        faithful=tuple(bits(faithful)),
        mode=mode,
        omega=w,
        n=G.n,
        bound=(w - 2) * G.n // (w - 1),
        valid=is_lars_mask(G, final),
        guaranteed=w >= 4,
        y_exhausted=not state.Y,
        attempts=attempts,
        log=state.log,
        decomposition=D,
    )


# counting lemmas ---------------------------------------------------------------

@dataclass(frozen=True)
class CountingCheck:
    t: int
    omega: int
    xi: Fraction
    case_bound: int
    holds: bool


def _case_bound(omega: int, t: int) -> int:
    if t == 0:
        return omega - 1
    if t == 1:
        return 2 * omega - 2
    if t == 2:
        return 3 * omega - 4
    return omega * (t + 1) - 2 * t + 1


def counting_checks(omega: int, t_max: int) -> tuple[list[CountingCheck], dict[int, bool]]:
    """Exact-rational checks of ``xi_t`` against its case bound, plus the
    ratio inequality ``(w-2)/(w-1) * r >= r - 1`` for ``r`` in ``2..w-1``."""
    if omega <= 3:
        raise ValueError("counting checks need omega >= 4")
    ratio = Fraction(omega - 2, omega - 1)
    rows = []
    for t in range(t_max + 1):
        xi = ratio * (omega * (t + 1) + 1)
        bound = _case_bound(omega, t)
        rows.append(CountingCheck(t, omega, xi, bound, xi >= bound))
    r_checks = {r: ratio * r >= r - 1 for r in range(2, omega)}
    return rows, r_checks
