"""Corpus sweeps: stream graphs, filter, analyse in worker chunks, merge in order."""

from __future__ import annotations

import json
import logging
import multiprocessing as mp
import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

import numpy as np

from .clique import clique_number
from .dims import Variant, batch_dims
from .graph import Graph, Graph6Error, decode_graph6, encode_graph6, from_edges, is_connected, labeled_graphs, read_graph6_file
from .verify import EQUALITY, FAILS, OVERSHOOT, DimensionReport, analyze

log = logging.getLogger(__name__)

__all__ = ["SweepConfig", "SweepSummary", "run_sweep", "iter_source", "default_jobs", "CHECK_GROUPS"]

CHECK_GROUPS = ("theorem", "known", "construct", "packing")
BUILTIN_MAX_N = 7


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("LOCDIM_JOBS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SweepConfig:
    builtin_n: int | None = None
    builtin_min_n: int = 1
    path: str | None = None
    random_count: int = 0
    random_n: int = 10
    random_p: float = 0.5
    plant_omega: int | None = None
    seed: int | None = None
    # filters
    applicable_only: bool = True  # connected, omega >= 3, n >= omega + 1
    omega_min: int | None = None
    omega_max: int | None = None
    checks: tuple[str, ...] = CHECK_GROUPS
    variants: tuple[Variant, ...] = tuple(Variant)
    jobs: int = 1
    chunk_size: int = 2048
    timing: bool = False
    halt_on_violation: bool = True

    def __post_init__(self):
        sources = sum([self.builtin_n is not None, self.path is not None, self.random_count > 0])
        if sources != 1:
            raise ValueError("choose exactly one source: builtin, graph6 file or random model")
        if self.builtin_n is not None and not 1 <= self.builtin_n <= BUILTIN_MAX_N:
            raise ValueError(f"builtin exhaustive source is limited to n <= {BUILTIN_MAX_N}")
        if self.random_count and self.seed is None:
            raise ValueError("the random model needs an explicit seed")
        unknown = set(self.checks) - set(CHECK_GROUPS)
        if unknown:
            raise ValueError(f"unknown check groups {sorted(unknown)}")


@dataclass
class SweepSummary:
    graphs_seen: int = 0
    rows: int = 0
    filtered_out: int = 0
    verdicts: Counter = field(default_factory=Counter)
    failures: list[tuple[str, list[str]]] = field(default_factory=list)
    equality: int = 0
    faithful_overshoot: list[str] = field(default_factory=list)
    pruned_overshoot: list[str] = field(default_factory=list)
    pruned_overshoot_w4: list[str] = field(default_factory=list)
    malformed: list[tuple[int, str]] = field(default_factory=list)
    halted: bool = False
    counterexample: dict | None = None

    @property
    def violations(self) -> int:
        return self.verdicts[("main_bound", FAILS)]

    @property
    def failed(self) -> bool:
        return bool(self.failures)

    def to_dict(self) -> dict:
        verdicts: dict[str, dict[str, int]] = {}
        for (name, verdict), count in sorted(self.verdicts.items()):
            verdicts.setdefault(name, {})[verdict] = count
        return {
            "graphs_seen": self.graphs_seen,
            "rows": self.rows,
            "filtered_out": self.filtered_out,
            "main_bound_violations": self.violations,
            "main_bound_equality": self.equality,
            "failed_rows": len(self.failures),
            "faithful_overshoot": len(self.faithful_overshoot),
            "pruned_overshoot": len(self.pruned_overshoot),
            "pruned_overshoot_omega_ge_4": self.pruned_overshoot_w4,
            "malformed_lines": [{"line": ln, "error": msg} for ln, msg in self.malformed],
            "halted": self.halted,
            "verdicts": verdicts,
        }


# sources ---------------------------------------------------------------------

def _random_graphs(cfg: SweepConfig) -> Iterator[tuple[str, Graph]]:
    rng = np.random.default_rng(cfg.seed)
    n = cfg.random_n
    iu = np.triu_indices(n, 1)
    for k in range(cfg.random_count):
        keep = rng.random(len(iu[0])) < cfg.random_p
        edges = {(int(a), int(b)) for a, b, on in zip(iu[0], iu[1], keep) if on}
        if cfg.plant_omega:
            members = sorted(int(v) for v in rng.choice(n, size=cfg.plant_omega, replace=False))
            edges.update((a, b) for i, a in enumerate(members) for b in members[i + 1:])
        G = from_edges(n, edges)
        yield f"seed={cfg.seed}#{k}:{encode_graph6(G)}", G


def iter_source(cfg: SweepConfig) -> Iterator[tuple]:
    """Yield ``("graph", id, G)`` or ``("bad", line_number, message)`` items."""
    if cfg.builtin_n is not None:
        for n in range(cfg.builtin_min_n, cfg.builtin_n + 1):
            for _, G in labeled_graphs(n):
                yield "graph", encode_graph6(G), G
    elif cfg.path is not None:
        for lineno, token in read_graph6_file(cfg.path):
            try:
                G = decode_graph6(token)
            except Graph6Error as err:
                yield "bad", lineno, str(err)
                continue
            yield "graph", token, G
    else:
        for gid, G in _random_graphs(cfg):
            yield "graph", gid, G


def _chunks(items: Iterable, size: int) -> Iterator[list]:
    buf = []
    for item in items:
        buf.append(item)
        if len(buf) >= size:
            yield buf
            buf = []
    if buf:
        yield buf


# work ------------------------------------------------------------------------

_DIM_NAME = {Variant.METRIC: "dim", Variant.LOCAL_METRIC: "dim_l",
             Variant.ADJACENCY: "dim_a", Variant.LOCAL_ADJACENCY: "dim_al"}


def _keep(cfg: SweepConfig, G: Graph) -> tuple[bool, int | None]:
    if G.n < 1 or not is_connected(G):
        return False, None
    w = clique_number(G)
    if cfg.applicable_only and (w < 3 or G.n < w + 1):
        return False, w
    if cfg.omega_min is not None and w < cfg.omega_min:
        return False, w
    if cfg.omega_max is not None and w > cfg.omega_max:
        return False, w
    return True, w


def _process_chunk(args) -> tuple[list, int, int]:
    cfg, items = args
    kept = []
    bad = 0
    for item in items:
        if item[0] != "graph":
            bad += 1
            continue
        ok, _ = _keep(cfg, item[2])
        if ok:
            kept.append((item[1], item[2]))
    filtered = len(items) - bad - len(kept)
    variants = list(cfg.variants)
    if {"theorem", "known"} & set(cfg.checks):
        variants = list(Variant)
    dims_for: list[dict] = [{} for _ in kept]
    by_n: dict[int, list[int]] = {}
    for k, (_, G) in enumerate(kept):
        by_n.setdefault(G.n, []).append(k)
    for n, idx in by_n.items():
        if n > 8 or not variants:
            continue
        adj = np.array([kept[k][1].masks for k in idx], dtype=np.uint16).reshape(len(idx), n)
        table = batch_dims(adj, n, variants)
        for v, vals in table.items():
            name = _DIM_NAME[v]
            for k, val in zip(idx, vals.tolist()):
                dims_for[k][name] = val
    reports = [
        analyze(G, gid, dims=dims_for[k], variants=variants,
                theorem="theorem" in cfg.checks, known="known" in cfg.checks,
                construct="construct" in cfg.checks, packing="packing" in cfg.checks,
                timing=cfg.timing)
        for k, (gid, G) in enumerate(kept)
    ]
    return reports, filtered, len(items) - bad


def run_sweep(cfg: SweepConfig, on_report: Callable[[DimensionReport], None] | None = None,
              counterexample_path: str | None = None) -> SweepSummary:
    """Run the sweep; reports reach ``on_report`` in input order whatever ``jobs`` is."""
    summary = SweepSummary()

    def source_chunks():
        for chunk in _chunks(iter_source(cfg), cfg.chunk_size):
            for item in chunk:
                if item[0] == "bad":
                    summary.malformed.append((item[1], item[2]))
                    log.warning("line %d: %s", item[1], item[2])
            yield cfg, chunk

    pool = None
    if cfg.jobs > 1:
        pool = mp.get_context("fork").Pool(cfg.jobs)
        results = pool.imap(_process_chunk, source_chunks())
    else:
        results = map(_process_chunk, source_chunks())
    try:
        for reports, filtered, seen in results:
            summary.graphs_seen += seen
            summary.filtered_out += filtered
            for rep in reports:
                summary.rows += 1
                for name, verdict in rep.checks.items():
                    summary.verdicts[(name, verdict)] += 1
                if rep.checks.get("main_bound") == EQUALITY:
                    summary.equality += 1
                if rep.checks.get("faithful_size") == OVERSHOOT:
                    summary.faithful_overshoot.append(rep.id)
                if rep.checks.get("pruned_size") == OVERSHOOT:
                    summary.pruned_overshoot.append(rep.id)
                    if rep.omega is not None and rep.omega >= 4:
                        summary.pruned_overshoot_w4.append(rep.id)
                if rep.failed:
                    summary.failures.append((rep.id, rep.failed))
                if on_report is not None:
                    on_report(rep)
                if cfg.halt_on_violation and rep.checks.get("main_bound") == FAILS:
                    summary.halted = True
                    summary.counterexample = rep.to_dict()
                    if counterexample_path:
                        with open(counterexample_path, "w") as fh:
                            json.dump(rep.to_dict(), fh, indent=2)
                    log.error("counterexample to the main bound: %s", rep.id)
                    return summary
    finally:
        if pool is not None:
            pool.terminate()
            pool.join()
    return summary
