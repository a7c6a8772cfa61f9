"""Vectorized invariants over stacks of small graphs (``n <= 8``).

A stack is a ``(graphs, n)`` uint16 array of neighbour masks.  These routines
make the exhaustive labeled sweeps at ``n = 7`` take seconds rather than
minutes.  The per-graph code in :mod:`locdim.verify` is the reference; tests
cross-check the two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .dims import Variant, batch_dims
from .graph import _pairs_graph6

__all__ = ["labeled_adjacency", "batch_connected", "batch_clique_number", "batch_bipartite",
           "ExhaustiveTally", "exhaustive_tally"]


def labeled_adjacency(n: int, chunk: int = 1 << 16) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield ``(codes, adj)`` blocks covering every labeled graph on ``n`` vertices.

    Codes and vertex order agree with :func:`locdim.graph.labeled_graphs`.
    """
    pairs = list(_pairs_graph6(n))
    m = len(pairs)
    total = 1 << m
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        adj = np.zeros((len(codes), n), dtype=np.uint16)
        for k, (i, j) in enumerate(pairs):
            on = ((codes >> (m - 1 - k)) & 1).astype(np.uint16)
            adj[:, i] |= on << j
            adj[:, j] |= on << i
        yield codes, adj


def _subset_is_independent(adj: np.ndarray, n: int, sub: int) -> np.ndarray:
    ok = np.ones(adj.shape[0], dtype=bool)
    for v in range(n):
        if sub >> v & 1:
            ok &= (adj[:, v] & sub) == 0
    return ok


def batch_connected(adj: np.ndarray, n: int) -> np.ndarray:
    full = (1 << n) - 1
    reached = np.ones(adj.shape[0], dtype=np.uint16)
    for _ in range(n):
        nxt = reached.copy()
        for w in range(n):
            nxt |= np.where((reached >> w) & 1 == 1, adj[:, w], 0).astype(np.uint16)
        reached = nxt
    return reached == full


def batch_clique_number(adj: np.ndarray, n: int) -> np.ndarray:
    omega = np.zeros(adj.shape[0], dtype=np.int16)
    for sub in range(1, 1 << n):
        size = sub.bit_count()
        ok = np.ones(adj.shape[0], dtype=bool)
        for v in range(n):
            if sub >> v & 1:
                rest = sub & ~(1 << v)
                ok &= (adj[:, v] & rest) == rest
        omega = np.where(ok & (omega < size), size, omega)
    return omega


def batch_bipartite(adj: np.ndarray, n: int) -> np.ndarray:
    """Some side ``A`` containing vertex 0 with ``A`` and its complement independent."""
    full = (1 << n) - 1
    out = np.zeros(adj.shape[0], dtype=bool)
    for a in range(1, 1 << n, 2):
        out |= _subset_is_independent(adj, n, a) & _subset_is_independent(adj, n, full & ~a)
    return out


@dataclass
class ExhaustiveTally:
    n: int
    graphs: int = 0
    connected: int = 0
    applicable: int = 0
    checked: dict[str, int] = field(default_factory=dict)
    violations: dict[str, int] = field(default_factory=dict)
    equality: int = 0

    def add(self, name: str, hyp: np.ndarray, bad: np.ndarray) -> None:
        self.checked[name] = self.checked.get(name, 0) + int(hyp.sum())
        self.violations[name] = self.violations.get(name, 0) + int((hyp & bad).sum())

    @property
    def total_violations(self) -> int:
        return sum(self.violations.values())


def exhaustive_tally(n: int, chunk: int = 1 << 16) -> ExhaustiveTally:
    """Main bound, inequality chain and the dim_l results over every labeled graph on ``n`` vertices."""
    tally = ExhaustiveTally(n)
    for _, adj in labeled_adjacency(n, chunk):
        tally.graphs += len(adj)
        conn = batch_connected(adj, n) if n > 1 else np.ones(len(adj), dtype=bool)
        adj = adj[conn]
        if not len(adj):
            continue
        tally.connected += len(adj)
        w = batch_clique_number(adj, n).astype(np.int64)
        dims = batch_dims(adj, n, list(Variant))
        d, dl = dims[Variant.METRIC].astype(np.int64), dims[Variant.LOCAL_METRIC].astype(np.int64)
        da, dal = dims[Variant.ADJACENCY].astype(np.int64), dims[Variant.LOCAL_ADJACENCY].astype(np.int64)
        every = np.ones(len(adj), dtype=bool)
        complete = w == n

        app = (w >= 3) & (n >= w + 1)
        tally.applicable += int(app.sum())
        b = np.where(app, (w - 2) * n // np.maximum(w - 1, 1), 0)
        tally.add("main_bound", app, dal > b)
        tally.equality += int((app & (dal == b)).sum())

        tally.add("local_chain", every, dl > dal)
        if n >= 2:
            tally.add("chain", every, ~((dl <= d) & (d <= da) & (dl <= dal) & (dal <= da)))
            tally.add("okamoto_i", every, (dl == n - 1) != complete)
            tally.add("okamoto_ii", every, (dl == n - 2) != (w == n - 1))
            tally.add("okamoto_iii", every, (dl == 1) != batch_bipartite(adj, n))
            log_w = np.array([math.ceil(math.log2(x)) if x > 0 else 0 for x in range(n + 1)])[w]
            tally.add("okamoto_iv", every, dl < np.maximum(log_w, n - 2.0 ** (n - w)))
            tally.add("clique_ratio", every, ~((w * dl < (w - 1) * n) | ((w * dl == (w - 1) * n) & complete)))
        tally.add("abrishami", (w == 2) & (n >= 3), 5 * dl > 2 * n)
        tally.add("omega_n_minus_2", w == n - 2, (dl < n - 4) | (dl > n - 3))
        tally.add("omega_n_minus_3", w == n - 3, (dl < n - 8) | (dl > n - 3))
        tally.add("omega3_dim_l", (w == 3) & (n >= 4), dl > n // 2)
        tally.add("omega3_dim_al", (w == 3) & (n >= 4), dal > n // 2)
        tally.add("omega4_dim_l", (w == 4) & (n >= 5), dl > 2 * n // 3)
    return tally
