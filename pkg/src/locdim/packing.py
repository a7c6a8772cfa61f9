"""Layered packing of pattern copies and the structural properties it enjoys.

For a graph with clique number ``w`` the layers are, in extraction order:

* layers ``1 .. w-1``: induced copies of ``K_{w+1}^{-i}`` (a ``w``-clique plus an
  apex adjacent to exactly ``w - i`` of its members);
* layers ``w .. 2w-1``: cliques of size ``2w - i`` (layer ``2w-1`` holds the
  leftover single vertices).

Each layer is packed greedily in the remainder left by the previous layers,
so no copy of a layer's pattern survives in the remainder after that layer.

Labels follow a degree rule inside each ``K_{w+1}^{-i}`` copy: labels
``1..w-i`` are the clique vertices adjacent to the apex, ``w-i+1..w`` the
clique vertices that are not, and ``w+1`` is the apex; ascending ids inside
each group.  Clique copies are labelled in ascending id order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .clique import clique_number, cliques_of_size
from .graph import Graph, GraphError, bits, is_connected, mask_of

__all__ = [
    "PatternCopy",
    "Decomposition",
    "PropertyResult",
    "find_pattern_copy",
    "find_all_copies",
    "pack_all",
    "check_structure",
    "check_properties",
    "decomposition_to_json",
]


@dataclass(frozen=True)
class PatternCopy:
    layer: int
    labels: tuple[int, ...]  # labels[l - 1] is the vertex carrying label l

    @property
    def mask(self) -> int:
        return mask_of(self.labels)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.labels))

    def x(self, label: int) -> int:
        return self.labels[label - 1]

    def __len__(self):
        return len(self.labels)


@dataclass(frozen=True)
class Decomposition:
    omega: int
    layers: tuple[tuple[PatternCopy, ...], ...]
    # remainders[i - 1] is the vertex mask of G_i, the graph layer i is packed in
    remainders: tuple[int, ...]
    exact: bool = False
    n: int = field(default=0)

    def layer(self, i: int) -> tuple[PatternCopy, ...]:
        return self.layers[i - 1]

    def layer_mask(self, i: int) -> int:
        m = 0
        for X in self.layer(i):
            m |= X.mask
        return m

    @property
    def num_layers(self) -> int:
        return 2 * self.omega - 1


def _pattern_size(omega: int, layer: int) -> int:
    return omega + 1 if layer < omega else 2 * omega - layer


def _label_near_clique(G: Graph, clique: tuple[int, ...], apex: int, layer: int) -> PatternCopy:
    nb = G.masks[apex]
    full = [q for q in clique if nb >> q & 1]
    partial = [q for q in clique if not nb >> q & 1]
    return PatternCopy(layer, tuple(full + partial + [apex]))


def _check_layer(omega: int, layer: int):
    if omega < 2:
        raise GraphError("packing needs omega >= 2")
    if not 1 <= layer <= 2 * omega - 1:
        raise GraphError(f"layer {layer} outside 1..{2 * omega - 1}")


def _copies_in(G: Graph, within: int, omega: int, layer: int):
    """Every induced copy of the layer pattern in ``G[within]``, lexicographic.

    Valid only when ``G[within]`` has no clique larger than ``omega``.
    """
    if layer >= omega:
        for q in cliques_of_size(G, 2 * omega - layer, within):
            yield PatternCopy(layer, q)
        return
    want = omega - layer
    for q in cliques_of_size(G, omega, within):
        qm = mask_of(q)
        for v in bits(within & ~qm):
            if (G.masks[v] & qm).bit_count() == want:
                yield _label_near_clique(G, q, v, layer)


def find_pattern_copy(H: Graph, omega: int, layer: int, within: int | None = None) -> PatternCopy | None:
    """First induced copy of layer ``layer``'s pattern in ``H`` (or ``H[within]``)."""
    _check_layer(omega, layer)
    within = H.all_mask if within is None else within
    return next(_copies_in(H, within, omega, layer), None)


def find_all_copies(H: Graph, omega: int, layer: int, within: int | None = None) -> list[PatternCopy]:
    """All copies, one per distinct vertex set."""
    _check_layer(omega, layer)
    within = H.all_mask if within is None else within
    seen = set()
    out = []
    for X in _copies_in(H, within, omega, layer):
        if X.mask not in seen:
            seen.add(X.mask)
            out.append(X)
    return out


def _max_disjoint(copies: list[PatternCopy]) -> list[PatternCopy]:
    best: list[PatternCopy] = []

    def rec(k: int, used: int, chosen: list[PatternCopy]):
        nonlocal best
        if len(chosen) + (len(copies) - k) <= len(best):
            return
        if k == len(copies):
            best = list(chosen)
            return
        X = copies[k]
        if not X.mask & used:
            chosen.append(X)
            rec(k + 1, used | X.mask, chosen)
            chosen.pop()
        rec(k + 1, used, chosen)

    rec(0, 0, [])
    return best


def pack_all(G: Graph, omega: int | None = None, exact: bool = False) -> Decomposition:
    """Build the layered packing of ``G``.

    The default is greedy: each layer takes the first copy of its pattern in
    the current remainder until none is left, which makes the layer
    inclusion-maximal.  ``exact=True`` packs each layer with a maximum number
    of copies by exhaustive search (debug mode, ``n <= 8``).
    """
    if omega is None:
        omega = clique_number(G)
    if omega < 3:
        raise GraphError("packing needs omega >= 3")
    if G.n < omega + 1:
        raise GraphError("packing needs n >= omega + 1")
    if not is_connected(G):
        raise GraphError("packing needs a connected graph")
    if exact and G.n > 8:
        raise GraphError("exact packing is a debug mode for n <= 8")
    alive = G.all_mask
    layers = []
    remainders = []
    for layer in range(1, 2 * omega):
        remainders.append(alive)
        if exact:
            chosen = _max_disjoint(find_all_copies(G, omega, layer, alive))
            for X in chosen:
                alive &= ~X.mask
        else:
            chosen = []
            while True:
                X = find_pattern_copy(G, omega, layer, alive)
                if X is None:
                    break
                chosen.append(X)
                alive &= ~X.mask
        layers.append(tuple(chosen))
    if alive:
        raise AssertionError("singleton layer must absorb every leftover vertex")
    return Decomposition(omega, tuple(layers), tuple(remainders), exact, G.n)


def decomposition_to_json(D: Decomposition) -> str:
    payload = {
        "omega": D.omega,
        "packing": "maximum" if D.exact else "maximal",
        "layers": [[list(X.labels) for X in copies] for copies in D.layers],
    }
    return json.dumps(payload, separators=(",", ":"))


# structural checks ------------------------------------------------------------

@dataclass(frozen=True)
class PropertyResult:
    name: str
    holds: bool
    counterexample: dict | None = None


def _copy_degree_ok(G: Graph, X: PatternCopy, omega: int) -> bool:
    m = X.mask
    deg = [(G.masks[v] & m).bit_count() for v in X.labels]
    if X.layer >= omega:
        return len(X) == 2 * omega - X.layer and all(d == len(X) - 1 for d in deg)
    i = X.layer
    if len(X) != omega + 1:
        return False
    for label, d in enumerate(deg, start=1):
        if label <= omega - i:
            want = omega
        elif label == omega + 1:
            want = omega - i
        else:
            want = omega - 1
        if d != want:
            return False
    return True


def check_structure(G: Graph, D: Decomposition) -> list[PropertyResult]:
    """Partition, per-layer residue emptiness and labelling soundness."""
    if D.n != G.n:
        raise GraphError("decomposition was built for a different graph")
    union = 0
    overlap = None
    total = 0
    for i in range(1, D.num_layers + 1):
        for X in D.layer(i):
            if union & X.mask and overlap is None:
                overlap = {"layer": i, "copy": list(X.labels)}
            union |= X.mask
            total += len(X)
    partition = PropertyResult(
        "partition",
        union == G.all_mask and total == G.n and overlap is None,
        None if union == G.all_mask and overlap is None else {"overlap": overlap, "covered": list(bits(union))},
    )
    residue_cex = None
    for i in range(1, D.num_layers + 1):
        after = D.remainders[i - 1] & ~D.layer_mask(i)
        left = find_pattern_copy(G, D.omega, i, after)
        if left is not None:
            residue_cex = {"layer": i, "copy": list(left.labels)}
            break
    labelling_cex = None
    for i in range(1, D.num_layers + 1):
        for X in D.layer(i):
            if not _copy_degree_ok(G, X, D.omega):
                labelling_cex = {"layer": i, "copy": list(X.labels)}
                break
        if labelling_cex:
            break
    return [
        partition,
        PropertyResult("residue", residue_cex is None, residue_cex),
        PropertyResult("labelling", labelling_cex is None, labelling_cex),
    ]


def _is_clique_mask(G: Graph, m: int) -> bool:
    for v in bits(m):
        if (G.masks[v] | 1 << v) & m != m:
            return False
    return True


def _prop_I(G, D):
    w = D.omega
    for X in D.layer(1):
        for v in bits(G.all_mask & ~X.mask):
            for sub in combinations(X.labels, w):
                if _is_clique_mask(G, mask_of(sub) | 1 << v):
                    return {"copy": list(X.labels), "subset": list(sub), "v": v}
    return None


def _prop_II(G, D):
    w = D.omega
    for gamma in range(2, w):
        rem = D.remainders[gamma - 1]
        for X in D.layer(gamma):
            core = [X.x(l) for l in range(1, w + 1) if l not in (w - gamma, w - gamma + 1)]
            for j in (w - gamma, w - gamma + 1):
                for v in bits(rem & ~X.mask):
                    m = mask_of(core) | 1 << X.x(j) | 1 << v
                    if _is_clique_mask(G, m):
                        return {"gamma": gamma, "copy": list(X.labels), "j": j, "v": v}
    return None


def _prop_III(G, D):
    # a later clique vertex never completes an earlier clique copy to a larger clique
    w = D.omega
    for gamma in range(w + 1, 2 * w):
        for X in D.layer(gamma):
            for ups in range(gamma, 2 * w):
                for Y in D.layer(ups):
                    if Y is X:
                        continue
                    for y in Y.labels:
                        if _is_clique_mask(G, X.mask | 1 << y):
                            return {"gamma": gamma, "copy": list(X.labels), "upsilon": ups, "x": y}
    return None


def _prop_IV(G, D):
    w = D.omega
    for X in D.layer(w):
        for gamma in range(w, 2 * w):
            for Y in D.layer(gamma):
                if Y is X:
                    continue
                for x in X.labels:
                    hit = G.masks[x] & Y.mask
                    if hit:
                        return {"copy": list(X.labels), "gamma": gamma, "other": list(Y.labels),
                                "edge": [x, next(bits(hit))]}
    return None


def _prop_V(G, D, literal=False):
    w = D.omega
    for gamma in range(1, w):
        for X in D.layer(gamma):
            for Y in D.layer(w):
                for x in X.labels:
                    for y in Y.labels:
                        if not literal and not G.has_edge(x, y):
                            continue
                        ok = any(
                            (G.masks[x] >> y & 1) + (G.masks[x] >> z & 1) == 1
                            for z in Y.labels if z != y
                        )
                        if not ok:
                            return {"gamma": gamma, "copy": list(X.labels), "clique": list(Y.labels),
                                    "x": x, "y": y}
    return None


def check_properties(G: Graph, D: Decomposition, literal_v: bool = False) -> list[PropertyResult]:
    """Evaluate properties (I)-(V) by enumeration over their quantified ranges.

    (III) is tested in its strong form: ``V(X) + {x}`` never induces a complete
    graph.  (V) quantifies over adjacent pairs ``x ~ y``; pass
    ``literal_v=True`` to quantify over all pairs instead, which fails as soon
    as some vertex of a near-clique copy has no neighbour in a clique copy.
    """
    if D.n != G.n:
        raise GraphError("decomposition was built for a different graph")
    checks = [("I", _prop_I(G, D)), ("II", _prop_II(G, D)), ("III", _prop_III(G, D)),
              ("IV", _prop_IV(G, D)), ("V", _prop_V(G, D, literal_v))]
    return [PropertyResult(name, cex is None, cex) for name, cex in checks]
