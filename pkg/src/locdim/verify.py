"""Bound formula, theorem verdicts and checks of the known results on dim_l.

Verdict strings: ``holds``, ``equality`` (holds with equality where that is
worth flagging), ``overshoot`` (a constructed set larger than the bound, which
is reported but is not a failure), ``skip`` (hypothesis not met) and
``fails``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field

from .clique import clique_number
from .construct import NoAdmissibleChoice, construct_lars
from .dims import Variant, dimension
from .graph import Graph, decode_graph6, encode_graph6, is_bipartite, is_connected
from .packing import check_properties, check_structure, pack_all

__all__ = [
    "HOLDS", "EQUALITY", "FAILS", "SKIP", "OVERSHOOT",
    "bound",
    "applicable",
    "theorem_check",
    "known_results_check",
    "DimensionReport",
    "REPORT_COLUMNS",
    "analyze",
    "compute_dims",
]

HOLDS, EQUALITY, FAILS, SKIP, OVERSHOOT = "holds", "equality", "fails", "skip", "overshoot"

_DIM_KEYS = {
    Variant.METRIC: "dim",
    Variant.LOCAL_METRIC: "dim_l",
    Variant.ADJACENCY: "dim_a",
    Variant.LOCAL_ADJACENCY: "dim_al",
}


def bound(n: int, omega: int) -> int:
    """floor((omega - 2) / (omega - 1) * n) in integer arithmetic."""
    if omega < 3 or n < omega + 1:
        raise ValueError(f"bound needs omega >= 3 and n >= omega + 1 (n={n}, omega={omega})")
    return (omega - 2) * n // (omega - 1)


def applicable(G: Graph, omega: int | None = None) -> bool:
    if G.n < 4 or not is_connected(G):
        return False
    w = clique_number(G) if omega is None else omega
    return w >= 3 and G.n >= w + 1


def compute_dims(G: Graph, variants=tuple(Variant)) -> dict[str, int]:
    return {_DIM_KEYS[Variant(v)]: dimension(G, v) for v in variants}


def _need(dims: dict, G: Graph, *keys: str) -> dict:
    missing = [k for k in keys if dims.get(k) is None]
    if missing:
        inv = {v: k for k, v in _DIM_KEYS.items()}
        dims.update(compute_dims(G, [inv[k] for k in missing]))
    return dims


def theorem_check(G: Graph, dims: dict | None = None, omega: int | None = None) -> dict[str, str]:
    """Verdicts for the main bound and for ``dim_l <= dim_al``."""
    dims = {} if dims is None else dims
    out = {"main_bound": SKIP, "local_chain": SKIP}
    if G.n < 1 or not is_connected(G):
        return out
    w = clique_number(G) if omega is None else omega
    _need(dims, G, "dim_l", "dim_al")
    out["local_chain"] = HOLDS if dims["dim_l"] <= dims["dim_al"] else FAILS
    if applicable(G, w):
        b = bound(G.n, w)
        dal = dims["dim_al"]
        out["main_bound"] = FAILS if dal > b else (EQUALITY if dal == b else HOLDS)
    return out


def _iff(left: bool, right: bool) -> str:
    return HOLDS if left == right else FAILS


def _ok(cond: bool) -> str:
    return HOLDS if cond else FAILS


def known_results_check(G: Graph, dims: dict | None = None, omega: int | None = None) -> dict[str, str]:
    """Evaluate every quoted result on dim_l whose hypothesis ``G`` meets."""
    dims = {} if dims is None else dims
    names = ["chain", "okamoto_i", "okamoto_ii", "okamoto_iii", "okamoto_iv", "abrishami",
             "clique_ratio", "omega_n_minus_2", "omega_n_minus_3", "omega3_dim_l", "omega3_dim_al", "omega4_dim_l"]
    out = dict.fromkeys(names, SKIP)
    n = G.n
    if n < 2 or not is_connected(G):
        return out
    w = clique_number(G) if omega is None else omega
    _need(dims, G, "dim", "dim_l", "dim_a", "dim_al")
    d, dl, da, dal = dims["dim"], dims["dim_l"], dims["dim_a"], dims["dim_al"]
    out["chain"] = _ok(dl <= d <= da and dl <= dal <= da)
    out["okamoto_i"] = _iff(dl == n - 1, G.is_complete())
    out["okamoto_ii"] = _iff(dl == n - 2, w == n - 1)
    out["okamoto_iii"] = _iff(dl == 1, is_bipartite(G))
    out["okamoto_iv"] = _ok(dl >= max(math.ceil(math.log2(w)), n - 2 ** (n - w)))
    if w == 2 and n >= 3:
        out["abrishami"] = _ok(5 * dl <= 2 * n)
    # dim_l <= (w-1)/w * n, with equality only for complete graphs
    lhs, rhs = w * dl, (w - 1) * n
    out["clique_ratio"] = _ok(lhs < rhs or (lhs == rhs and G.is_complete()))
    if w == n - 2:
        out["omega_n_minus_2"] = _ok(n - 4 <= dl <= n - 3)
    if w == n - 3:
        out["omega_n_minus_3"] = _ok(n - 8 <= dl <= n - 3)
    if w == 3 and n >= 4:
        out["omega3_dim_l"] = _ok(dl <= n // 2)
        out["omega3_dim_al"] = _ok(dal <= n // 2)
    if w == 4 and n >= 5:
        out["omega4_dim_l"] = _ok(dl <= 2 * n // 3)
    return out


REPORT_COLUMNS = ("id", "n", "omega", "bound", "dim", "dim_l", "dim_a", "dim_al",
                  "s_faithful", "s_pruned", "checks", "ms")


@dataclass
class DimensionReport:
    id: str
    n: int
    omega: int | None
    bound: int | None = None
    dim: int | None = None
    dim_l: int | None = None
    dim_a: int | None = None
    dim_al: int | None = None
    s_faithful: int | None = None
    s_pruned: int | None = None
    checks: dict[str, str] = field(default_factory=dict)
    ms: float | None = None

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in REPORT_COLUMNS}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def csv_row(self) -> list:
        row = []
        for k in REPORT_COLUMNS:
            v = getattr(self, k)
            if k == "checks":
                v = ";".join(f"{name}={verdict}" for name, verdict in v.items())
            row.append("" if v is None else v)
        return row

    def to_csv(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow(self.csv_row())
        return buf.getvalue()

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if v == FAILS]


def _size_verdict(size: int, b: int) -> str:
    return OVERSHOOT if size > b else (EQUALITY if size == b else HOLDS)


def analyze(G: Graph, gid: str = "", *, dims: dict | None = None, variants=tuple(Variant),
            theorem: bool = True, known: bool = True, construct: bool = True,
            packing: bool = True, timing: bool = False) -> DimensionReport:
    """Full per-graph pipeline producing one report row."""
    t0 = time.perf_counter()
    connected = G.n >= 1 and is_connected(G)
    w = clique_number(G) if G.n else None
    rep = DimensionReport(id=gid, n=G.n, omega=w)
    dims = dict(dims or {})
    if connected:
        missing = [v for v in variants if dims.get(_DIM_KEYS[Variant(v)]) is None]
        dims.update(compute_dims(G, missing))
    app = connected and applicable(G, w)
    if app:
        rep.bound = bound(G.n, w)
    checks = rep.checks
    if packing:
        checks["graph6"] = _ok(decode_graph6(encode_graph6(G)) == G)
    if theorem:
        checks.update(theorem_check(G, dims, w))
    if known:
        checks.update(known_results_check(G, dims, w))
    for k in ("dim", "dim_l", "dim_a", "dim_al"):
        setattr(rep, k, dims.get(k))
    decomposition = None
    if packing and app:
        decomposition = pack_all(G, w)
        results = check_structure(G, decomposition) + check_properties(G, decomposition)
        for r in results:
            checks[f"pack_{r.name}"] = _ok(r.holds)
    if construct and app:
        try:
            res = construct_lars(G, "pruned", omega=w, decomposition=decomposition)
        except NoAdmissibleChoice:
            checks["construct"] = FAILS
        else:
            rep.s_faithful = len(res.faithful)
            rep.s_pruned = res.size
            checks["construct"] = _ok(res.valid)
            checks["y_exhausted"] = _ok(res.y_exhausted)
            checks["faithful_size"] = _size_verdict(rep.s_faithful, rep.bound)
            checks["pruned_size"] = _size_verdict(rep.s_pruned, rep.bound)
    if timing:
        rep.ms = round((time.perf_counter() - t0) * 1000, 3)
    return rep
