"""Simple undirected graphs on dense vertex ids, graph6 I/O and generators.

A :class:`Graph` stores one neighbour bitmask per vertex.  Vertex ``v`` is bit
``1 << v``; every set of vertices handed out by this package iterates in
ascending id order, which is what makes the downstream greedy choices
reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Graph",
    "GraphError",
    "Graph6Error",
    "bits",
    "mask_of",
    "from_edges",
    "decode_graph6",
    "encode_graph6",
    "read_graph6_file",
    "distances_from",
    "all_distances",
    "induced",
    "edges_between",
    "is_connected",
    "is_bipartite",
    "is_p3",
    "gen_family",
    "complete",
    "path",
    "cycle",
    "knr",
    "gtw",
    "labeled_graphs",
    "component_mask",
]


class GraphError(ValueError):
    pass


class Graph6Error(GraphError):
    pass


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``masks[v]`` is the neighbourhood of ``v`` as a bitmask.
    """

    n: int
    masks: tuple[int, ...]

    def __post_init__(self):
        if len(self.masks) != self.n:
            raise GraphError(f"expected {self.n} neighbour masks, got {len(self.masks)}")
        full = (1 << self.n) - 1
        for v, m in enumerate(self.masks):
            if m & ~full:
                raise GraphError(f"vertex {v} has a neighbour id >= n")
            if m >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in bits(m):
                if not self.masks[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def adj(self, v: int) -> frozenset[int]:
        return frozenset(bits(self.masks[v]))

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.masks[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.masks[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in bits(self.masks[v] & ((1 << v) - 1))]

    @property
    def num_edges(self) -> int:
        return sum(m.bit_count() for m in self.masks) // 2

    def is_complete(self) -> bool:
        return self.num_edges == self.n * (self.n - 1) // 2

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"

    @classmethod
    def _trusted(cls, n: int, masks: tuple[int, ...]) -> "Graph":
        # skips validation; only for masks built symmetric by construction
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "masks", masks)
        return g


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    masks = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return Graph(n, tuple(masks))


# graph6 --------------------------------------------------------------------

def _pairs_graph6(n: int) -> Iterator[tuple[int, int]]:
    # column-major upper triangle: (0,1),(0,2),(1,2),(0,3),...
    for j in range(1, n):
        for i in range(j):
            yield i, j


def encode_graph6(G: Graph) -> str:
    n = G.n
    if n < 63:
        header = chr(63 + n)
    elif n < 258048:
        header = "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    else:
        raise Graph6Error("graph6 encoding supports n < 258048 only")
    out = []
    acc = nbits = 0
    for i, j in _pairs_graph6(n):
        acc = acc << 1 | (G.masks[i] >> j & 1)
        nbits += 1
        if nbits == 6:
            out.append(chr(63 + acc))
            acc = nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return header + "".join(out)


def decode_graph6(text: str) -> Graph:
    token = text.strip("\r\n")
    if token.startswith(">>graph6<<"):
        token = token[len(">>graph6<<"):]
    if not token:
        raise Graph6Error("empty graph6 token")
    data = [ord(c) - 63 for c in token]
    if any(d < 0 or d > 63 for d in data):
        raise Graph6Error(f"byte outside printable range 63..126 in {token!r}")
    if data[0] == 63:
        if len(data) < 4 or data[1] == 63:
            # n >= 258048 uses an 8-byte header we do not support
            raise Graph6Error(f"malformed or unsupported long header in {token!r}")
        n = data[1] << 12 | data[2] << 6 | data[3]
        if n < 63:
            raise Graph6Error(f"non-canonical long header for n={n}")
        payload = data[4:]
    else:
        n = data[0]
        payload = data[1:]
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    if len(payload) != expected:
        raise Graph6Error(
            f"payload has {len(payload)} bytes, expected {expected} for n={n}"
        )
    masks = [0] * n
    k = 0
    for i, j in _pairs_graph6(n):
        if payload[k // 6] >> (5 - k % 6) & 1:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        k += 1
    if nbits % 6 and payload[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise Graph6Error(f"nonzero padding bits in {token!r}")
    return Graph(n, tuple(masks))


def read_graph6_file(path) -> Iterator[tuple[int, str]]:
    """Yield ``(line_number, token)`` for every graph line of a graph6 file.

    Blank lines and a leading ``>>graph6<<`` header line are skipped; a header
    glued onto the first token is left for :func:`decode_graph6` to strip.
    """
    with open(path, "r", encoding="ascii", errors="replace") as fh:
        for lineno, line in enumerate(fh, start=1):
            token = line.strip()
            if not token or token == ">>graph6<<":
                continue
            yield lineno, token


# metric helpers --------------------------------------------------------------

def distances_from(G: Graph, v: int) -> list[int | None]:
    """BFS distances from ``v``; unreachable vertices get ``None``."""
    if not 0 <= v < G.n:
        raise GraphError(f"vertex {v} out of range")
    dist: list[int | None] = [None] * G.n
    dist[v] = 0
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in bits(G.masks[u]):
            if dist[w] is None:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def all_distances(G: Graph) -> list[list[int | None]]:
    return [distances_from(G, v) for v in range(G.n)]


def _as_mask(G: Graph, W) -> int:
    if isinstance(W, int):
        if W & ~G.all_mask:
            raise GraphError("vertex set has members out of range")
        return W
    m = 0
    for v in W:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} out of range")
        m |= 1 << v
    return m


def induced(G: Graph, W) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by ``W``; returns ``(H, old_ids)`` with H vertex k = old_ids[k]."""
    wm = _as_mask(G, W)
    old = tuple(bits(wm))
    index = {v: k for k, v in enumerate(old)}
    masks = tuple(
        mask_of(index[u] for u in bits(G.masks[v] & wm)) for v in old
    )
    return Graph(len(old), masks), old


def edges_between(G: Graph, A, B) -> set[tuple[int, int]]:
    am, bm = _as_mask(G, A), _as_mask(G, B)
    if am & bm:
        raise GraphError("edges_between needs disjoint vertex sets")
    return {(a, b) for a in bits(am) for b in bits(G.masks[a] & bm)}


def component_mask(G: Graph, start: int, within: int | None = None) -> int:
    """Vertices reachable from ``start`` inside the vertex mask ``within``."""
    within = G.all_mask if within is None else within
    seen = frontier = 1 << start
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= G.masks[u]
        frontier = nxt & within & ~seen
        seen |= frontier
    return seen


def is_connected(G: Graph, within: int | None = None) -> bool:
    within = G.all_mask if within is None else within
    if not within:
        return False
    start = (within & -within).bit_length() - 1
    return component_mask(G, start, within) == within


def is_bipartite(G: Graph) -> bool:
    colour: dict[int, int] = {}
    for s in range(G.n):
        if s in colour:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in bits(G.masks[u]):
                if w not in colour:
                    colour[w] = colour[u] ^ 1
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return False
    return True


def is_p3(G: Graph, x: int, y1: int, y2: int) -> bool:
    """True iff ``G[{x, y1, y2}]`` is a path on three vertices."""
    if len({x, y1, y2}) != 3:
        raise GraphError("is_p3 needs three distinct vertices")
    m = G.masks
    return (m[x] >> y1 & 1) + (m[x] >> y2 & 1) + (m[y1] >> y2 & 1) == 2


# generators -----------------------------------------------------------------

def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return from_edges(n, combinations(range(n), 2))


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def knr(n: int, r: int) -> Graph:
    """K_n with ``r`` edges removed at the apex ``n-1``.

    The removed partners are ``n-2, n-3, ..., n-1-r``.
    """
    if n < 4 or not 1 <= r <= n - 2:
        raise GraphError(f"knr needs n >= 4 and 1 <= r <= n-2, got n={n}, r={r}")
    apex = n - 1
    dropped = {(apex - k, apex) for k in range(1, r + 1)}
    return from_edges(n, (e for e in combinations(range(n), 2) if e not in dropped))


def gtw(t: int, omega: int) -> Graph:
    """``t`` copies of K_omega glued at vertex 0.

    Copy ``k`` (0-based) owns vertices ``1 + k(omega-1) .. (k+1)(omega-1)``.
    """
    if t < 2 or omega < 2:
        raise GraphError(f"gtw needs t >= 2 and omega >= 2, got t={t}, omega={omega}")
    edges = []
    for k in range(t):
        block = [0] + list(range(1 + k * (omega - 1), 1 + (k + 1) * (omega - 1)))
        edges.extend(combinations(block, 2))
    return from_edges(t * (omega - 1) + 1, edges)


_FAMILIES = {
    "complete": (complete, ("n",)),
    "path": (path, ("n",)),
    "cycle": (cycle, ("n",)),
    "knr": (knr, ("n", "r")),
    "gtw": (gtw, ("t", "omega")),
}


def gen_family(kind: str, **params) -> Graph:
    try:
        fn, names = _FAMILIES[kind]
    except KeyError:
        raise GraphError(f"unknown family {kind!r}") from None
    missing = [p for p in names if p not in params]
    if missing:
        raise GraphError(f"family {kind!r} needs parameters {names}, missing {missing}")
    return fn(*(params[p] for p in names))


def labeled_graphs(n: int) -> Iterator[tuple[int, Graph]]:
    """Every labeled graph on ``n`` vertices, keyed by its graph6 bit code.

    Bit ``k`` of the code (most significant first in graph6 order) is the k-th
    pair of the column-major upper triangle.
    """
    pairs: Sequence[tuple[int, int]] = list(_pairs_graph6(n))
    m = len(pairs)
    for code in range(1 << m):
        masks = [0] * n
        c = code
        k = m - 1
        while c:
            if c & 1:
                i, j = pairs[k]
                masks[i] |= 1 << j
                masks[j] |= 1 << i
            c >>= 1
            k -= 1
        yield code, Graph._trusted(n, tuple(masks))
