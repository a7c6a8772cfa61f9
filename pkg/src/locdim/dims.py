"""Exact solvers for the four resolving-set variants.

A set ``S`` resolves the *relevant* pairs of vertices outside ``S``:

* metric / local-metric: some ``w`` in ``S`` has ``d(u, w) != d(v, w)``;
* adjacency / local-adjacency: some ``w`` in ``S`` is adjacent to exactly one
  of ``u`` and ``v``.

The local variants only care about adjacent pairs.  Minimisation is a
set-cover feasibility search: a vertex ``w`` *covers* a relevant pair when it
distinguishes it or is one of its ends (then the pair is not outside ``S``).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import numpy as np

from .graph import Graph, GraphError, all_distances, bits, is_connected

__all__ = [
    "Variant",
    "DimWitness",
    "is_resolving",
    "relevant_pairs",
    "cover_masks",
    "min_resolving_set",
    "dimension",
    "batch_dims",
]


class Variant(str, Enum):
    METRIC = "metric"
    LOCAL_METRIC = "local-metric"
    ADJACENCY = "adjacency"
    LOCAL_ADJACENCY = "local-adjacency"

    @property
    def local(self) -> bool:
        return self in (Variant.LOCAL_METRIC, Variant.LOCAL_ADJACENCY)

    @property
    def uses_distance(self) -> bool:
        return self in (Variant.METRIC, Variant.LOCAL_METRIC)

    @classmethod
    def parse(cls, name: str) -> "Variant":
        aliases = {
            "metric": cls.METRIC, "dim": cls.METRIC,
            "local": cls.LOCAL_METRIC, "local-metric": cls.LOCAL_METRIC, "dim_l": cls.LOCAL_METRIC,
            "adj": cls.ADJACENCY, "adjacency": cls.ADJACENCY, "dim_a": cls.ADJACENCY,
            "local-adj": cls.LOCAL_ADJACENCY, "local-adjacency": cls.LOCAL_ADJACENCY,
            "dim_al": cls.LOCAL_ADJACENCY,
        }
        try:
            return aliases[name.strip().lower()]
        except KeyError:
            raise ValueError(f"unknown variant {name!r}") from None


@dataclass(frozen=True)
class DimWitness:
    size: int
    set: tuple[int, ...]


def _check_distance_input(G: Graph, variant: Variant):
    if variant.uses_distance and not is_connected(G):
        raise GraphError(f"{variant.value} dimension needs a connected graph")


def is_resolving(G: Graph, S, variant: Variant | str) -> bool:
    """Direct check of the definition, pair by pair."""
    variant = Variant(variant)
    S = frozenset(S)
    if any(not 0 <= v < G.n for v in S):
        raise GraphError("S is not a subset of V(G)")
    _check_distance_input(G, variant)
    outside = [v for v in range(G.n) if v not in S]
    dist = all_distances(G) if variant.uses_distance else None
    for u, v in combinations(outside, 2):
        if variant.local and not G.has_edge(u, v):
            continue
        if variant.uses_distance:
            ok = any(dist[u][w] != dist[v][w] for w in S)
        else:
            ok = any(G.has_edge(w, u) != G.has_edge(w, v) for w in S)
        if not ok:
            return False
    return True


def relevant_pairs(G: Graph, variant: Variant) -> list[tuple[int, int]]:
    if variant.local:
        return G.edges()
    return list(combinations(range(G.n), 2))


def cover_masks(G: Graph, variant: Variant) -> tuple[list[tuple[int, int]], list[int]]:
    """For every vertex, the bitmask of relevant pair indices it covers."""
    pairs = relevant_pairs(G, variant)
    cover = [0] * G.n
    if variant.uses_distance:
        dist = all_distances(G)
        for k, (u, v) in enumerate(pairs):
            du, dv = dist[u], dist[v]
            bit = 1 << k
            for w in range(G.n):
                if du[w] != dv[w]:
                    cover[w] |= bit
    else:
        m = G.masks
        for k, (u, v) in enumerate(pairs):
            bit = 1 << k
            for w in bits(m[u] ^ m[v]):
                cover[w] |= bit
            cover[u] |= bit
            cover[v] |= bit
    return pairs, cover


def min_resolving_set(G: Graph, variant: Variant | str) -> DimWitness:
    """Smallest resolving set of the given variant; lexicographically least witness."""
    variant = Variant(variant)
    _check_distance_input(G, variant)
    pairs, cover = cover_masks(G, variant)
    full = (1 << len(pairs)) - 1
    n = G.n
    if full == 0:
        return DimWitness(0, ())
    # suffix[i] = union of covers of vertices i..n-1
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] | cover[i]
    if suffix[0] != full:
        raise AssertionError("V(G) must always resolve")

    chosen: list[int] = []

    def search(start: int, covered: int, left: int) -> bool:
        if covered == full:
            return True
        if left == 0:
            return False
        for w in range(start, n - left + 1):
            if (covered | suffix[w]) != full:
                return False
            if cover[w] & ~covered == 0:
                continue
            chosen.append(w)
            if search(w + 1, covered | cover[w], left - 1):
                return True
            chosen.pop()
        return False

    for k in range(1, n + 1):
        if search(0, 0, k):
            return DimWitness(len(chosen), tuple(chosen))
    raise AssertionError("unreachable")


def dimension(G: Graph, variant: Variant | str) -> int:
    return min_resolving_set(G, variant).size


# batch evaluation over many graphs of one order -------------------------------

_TABLES: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _subset_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """``hit[m]`` = bitset of subsets S with S & m != 0 (row 2^n is all ones);
    ``bysize[k]`` = bitset of subsets of size k."""
    if n in _TABLES:
        return _TABLES[n]
    nsub = 1 << n
    words = max(1, nsub // 64)
    hit = np.zeros((nsub + 1, words), dtype=np.uint64)
    bysize = np.zeros((n + 1, words), dtype=np.uint64)
    for S in range(nsub):
        word, bit = divmod(S, 64)
        bysize[S.bit_count(), word] |= np.uint64(1 << bit)
    for m in range(nsub):
        for S in range(nsub):
            if S & m:
                word, bit = divmod(S, 64)
                hit[m, word] |= np.uint64(1 << bit)
    hit[nsub, :] = np.uint64((1 << min(64, nsub)) - 1)
    _TABLES[n] = (hit, bysize)
    return hit, bysize


def _batch_distances(adj: np.ndarray, n: int) -> np.ndarray:
    """All-pairs BFS distances for a stack of graphs; 255 marks unreachable."""
    g = adj.shape[0]
    dist = np.full((g, n, n), 255, dtype=np.uint8)
    for v in range(n):
        dist[:, v, v] = 0
        reached = np.full(g, 1 << v, dtype=adj.dtype)
        frontier = reached.copy()
        for d in range(1, n):
            nxt = np.zeros(g, dtype=adj.dtype)
            for w in range(n):
                nxt |= np.where((frontier >> w) & 1 == 1, adj[:, w], 0).astype(adj.dtype)
            frontier = nxt & ~reached
            if not frontier.any():
                break
            reached |= frontier
            for w in range(n):
                dist[:, v, w] = np.where((frontier >> w) & 1 == 1, d, dist[:, v, w])
    return dist


def batch_dims(adj, n: int, variants=tuple(Variant)) -> dict[Variant, np.ndarray]:
    """Dimensions for a stack of graphs given as neighbour-mask rows.

    ``adj`` has shape ``(graphs, n)``.  Distance variants report -1 for
    disconnected graphs.  Only meant for ``n <= 8``.
    """
    if n > 8:
        raise ValueError("batch evaluation is limited to n <= 8")
    adj = np.asarray(adj, dtype=np.uint16).reshape(-1, n)
    g = adj.shape[0]
    hit, bysize = _subset_tables(n)
    none_row = 1 << n
    variants = [Variant(v) for v in variants]
    dist = None
    if any(v.uses_distance for v in variants):
        dist = _batch_distances(adj, n)
        connected = (dist != 255).all(axis=(1, 2))
    out = {}
    for variant in variants:
        valid = np.empty((g, hit.shape[1]), dtype=np.uint64)
        valid[:] = hit[none_row]
        for u, v in combinations(range(n), 2):
            ends = (1 << u) | (1 << v)
            if variant.uses_distance:
                diff = np.zeros(g, dtype=np.uint16)
                for w in range(n):
                    diff |= (dist[:, u, w] != dist[:, v, w]).astype(np.uint16) << w
            else:
                diff = adj[:, u] ^ adj[:, v]
            idx = (diff | ends).astype(np.int64)
            if variant.local:
                idx = np.where((adj[:, u] >> v) & 1 == 1, idx, none_row)
            valid &= hit[idx]
        dims = np.full(g, -1, dtype=np.int16)
        for k in range(n, -1, -1):
            feasible = (valid & bysize[k]).any(axis=1)
            dims = np.where(feasible, k, dims)
        if variant.uses_distance:
            dims = np.where(connected, dims, -1)
        out[variant] = dims
    return out
