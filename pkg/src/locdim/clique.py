"""Exact clique number and lexicographic k-clique enumeration on bitmasks."""

from __future__ import annotations

from typing import Iterator

from .graph import Graph, bits

__all__ = ["clique_number", "max_clique", "cliques_of_size", "is_clique"]


def is_clique(G: Graph, vertices) -> bool:
    vs = list(vertices)
    m = G.masks
    return all(m[u] >> v & 1 for i, u in enumerate(vs) for v in vs[i + 1:])


def _colour_bound(masks, cand: int) -> list[tuple[int, int]]:
    """Greedy sequential colouring of ``cand``.

    Returns ``(vertex, colour)`` pairs ordered by nondecreasing colour; the
    colour of a vertex bounds the clique size reachable from it and every
    vertex listed before it.
    """
    order = []
    colour = 0
    rest = cand
    while rest:
        colour += 1
        avail = rest
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            rest &= ~low
            avail &= ~low & ~masks[v]
            order.append((v, colour))
    return order


def max_clique(G: Graph, within: int | None = None) -> tuple[int, ...]:
    """A maximum clique of ``G[within]`` (branch and bound, colouring bounds)."""
    within = G.all_mask if within is None else within
    masks = G.masks
    best: list[int] = []

    def expand(current: list[int], cand: int):
        nonlocal best
        order = _colour_bound(masks, cand)
        for idx in range(len(order) - 1, -1, -1):
            v, colour = order[idx]
            if len(current) + colour <= len(best):
                return
            current.append(v)
            nxt = cand & masks[v]
            if nxt:
                expand(current, nxt)
            elif len(current) > len(best):
                best = list(current)
            current.pop()
            cand &= ~(1 << v)

    if within:
        expand([], within)
    return tuple(sorted(best))


def clique_number(G: Graph, within: int | None = None) -> int:
    if G.n < 1:
        raise ValueError("clique number needs n >= 1")
    return len(max_clique(G, within))


def cliques_of_size(G: Graph, k: int, within: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every k-clique of ``G[within]`` exactly once, in lexicographic order."""
    if k < 1:
        raise ValueError("clique size must be positive")
    within = G.all_mask if within is None else within
    masks = G.masks

    def rec(prefix: tuple[int, ...], cand: int, need: int):
        if need == 0:
            yield prefix
            return
        while cand and cand.bit_count() >= need:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            yield from rec(prefix + (v,), cand & masks[v], need - 1)

    yield from rec((), within, k)
