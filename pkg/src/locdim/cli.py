"""``locdim`` command line: gen, dims, construct, verify, sweep, counting.

Exit codes: 0 all checks passed, 1 some verdict failed, 2 input or usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

from .construct import NoAdmissibleChoice, construct_lars, counting_checks
from .dims import Variant
from .graph import Graph6Error, GraphError, decode_graph6, encode_graph6, gen_family, read_graph6_file
from .sweep import SweepConfig, default_jobs, run_sweep
from .verify import REPORT_COLUMNS, DimensionReport, analyze, applicable, compute_dims

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path: str) -> list[tuple[str, object]]:
    try:
        lines = list(read_graph6_file(path))
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err}") from None
    graphs = []
    for lineno, token in lines:
        try:
            graphs.append((token, decode_graph6(token)))
        except Graph6Error as err:
            raise UsageError(f"{path}:{lineno}: {err}") from None
    if not graphs:
        raise UsageError(f"{path}: no graphs")
    return graphs


class _Writer:
    def __init__(self, fh, fmt: str):
        self.fh, self.fmt = fh, fmt
        self.csv = None
        if fmt == "csv":
            self.csv = csv.writer(fh, lineterminator="\n")
            self.csv.writerow(REPORT_COLUMNS)

    def __call__(self, rep: DimensionReport):
        if self.csv is not None:
            self.csv.writerow(rep.csv_row())
        else:
            self.fh.write(rep.to_json() + "\n")


def _fmt_for(path: str | None, fmt: str | None) -> str:
    if fmt:
        return fmt
    return "csv" if path and path.endswith(".csv") else "json"


def cmd_gen(args) -> int:
    params = {k: getattr(args, k) for k in ("n", "r", "t", "omega") if getattr(args, k) is not None}
    G = gen_family(args.family, **params)
    print(encode_graph6(G))
    return EXIT_OK


def cmd_dims(args) -> int:
    variants = [Variant.parse(v) for v in args.variants.split(",") if v.strip()]
    write = _Writer(sys.stdout, args.format)
    for gid, G in _load(args.input):
        rep = DimensionReport(id=gid, n=G.n, omega=None)
        try:
            for k, v in compute_dims(G, variants).items():
                setattr(rep, k, v)
        except GraphError as err:
            raise UsageError(f"{gid}: {err}") from None
        write(rep)
    return EXIT_OK


def cmd_construct(args) -> int:
    status = EXIT_OK
    for gid, G in _load(args.input):
        if not applicable(G):
            print(json.dumps({"id": gid, "skip": "needs a connected graph with omega >= 3 and n >= omega + 1"}))
            continue
        try:
            res = construct_lars(G, args.mode)
        except NoAdmissibleChoice as err:
            print(json.dumps({"id": gid, "error": str(err), "dump": err.dump}))
            status = EXIT_FAIL
            continue
        row = {"id": gid, "n": res.n, "omega": res.omega, "bound": res.bound, "mode": res.mode,
               "S": list(res.S), "size": res.size, "valid": res.valid, "overshoot": res.overshoot,
               "guaranteed": res.guaranteed}
        if args.trace:
            row["log"] = res.log
        print(json.dumps(row, separators=(",", ":")))
        if not res.valid:
            status = EXIT_FAIL
    return status


def cmd_verify(args) -> int:
    write = _Writer(sys.stdout, args.format)
    status = EXIT_OK
    for gid, G in _load(args.input):
        rep = analyze(G, gid, timing=args.timing)
        write(rep)
        if rep.failed:
            status = EXIT_FAIL
    return status


def cmd_sweep(args) -> int:
    try:
        cfg = SweepConfig(
            builtin_n=args.builtin_n, path=args.input,
            random_count=args.random or 0, random_n=args.n_vertices, random_p=args.p,
            plant_omega=args.plant_omega, seed=args.seed,
            applicable_only=not args.all_connected,
            omega_min=args.omega_min, omega_max=args.omega_max,
            jobs=args.jobs, timing=args.timing, halt_on_violation=not args.no_halt,
        )
    except ValueError as err:
        raise UsageError(str(err)) from None
    if cfg.path is not None:
        try:
            with open(cfg.path):
                pass
        except OSError as err:
            raise UsageError(f"cannot read {cfg.path}: {err}") from None
    out = None
    write = None
    if args.report:
        out = open(args.report, "w", newline="")
        write = _Writer(out, _fmt_for(args.report, args.format))
    try:
        summary = run_sweep(cfg, write, counterexample_path=args.counterexample)
    finally:
        if out is not None:
            out.close()
    if cfg.path is not None and summary.graphs_seen == 0 and not summary.malformed:
        raise UsageError(f"{cfg.path}: no graphs")
    print(json.dumps(summary.to_dict(), indent=2))
    print(f"violations: {summary.violations}")
    return EXIT_FAIL if summary.failed else EXIT_OK


def cmd_counting(args) -> int:
    try:
        rows, r_checks = counting_checks(args.omega, args.tmax)
    except ValueError as err:
        raise UsageError(str(err)) from None
    print(f"{'t':>3} {'xi_t':>12} {'case bound':>10}  ok")
    for row in rows:
        print(f"{row.t:>3} {str(row.xi):>12} {row.case_bound:>10}  {row.holds}")
    for r, ok in r_checks.items():
        print(f"r={r}: ({args.omega}-2)/({args.omega}-1)*r >= r-1  {ok}")
    ok = all(row.holds for row in rows) and all(r_checks.values())
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="locdim", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="print a family member as graph6")
    g.add_argument("--family", required=True, choices=["complete", "path", "cycle", "knr", "gtw"])
    for name in ("n", "r", "t", "omega"):
        g.add_argument(f"--{name}", type=int)
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("dims", help="exact dimensions of every graph in a graph6 file")
    d.add_argument("--in", dest="input", required=True)
    d.add_argument("--variants", default="local,local-adj,metric,adj")
    d.add_argument("--format", choices=["json", "csv"], default="json")
    d.set_defaults(func=cmd_dims)

    c = sub.add_parser("construct", help="build a local adjacency resolving set")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--mode", choices=["faithful", "pruned"], default="faithful")
    c.add_argument("--trace", action="store_true", help="include the choice log")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="theorem and known-result checks per graph")
    v.add_argument("--in", dest="input", required=True)
    v.add_argument("--format", choices=["json", "csv"], default="json")
    v.add_argument("--timing", action="store_true")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="aggregate checks over a corpus")
    s.add_argument("--builtin-n", type=int, help="every labeled graph with up to N vertices (N <= 7)")
    s.add_argument("--in", dest="input", help="graph6 corpus")
    s.add_argument("--random", type=int, help="number of random graphs")
    s.add_argument("--n-vertices", type=int, default=10)
    s.add_argument("--p", type=float, default=0.5)
    s.add_argument("--plant-omega", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--all-connected", action="store_true",
                   help="keep every connected graph, not only those the bound applies to")
    s.add_argument("--omega-min", type=int)
    s.add_argument("--omega-max", type=int)
    s.add_argument("--jobs", type=int, default=default_jobs())
    s.add_argument("--report", help="per-graph rows (.csv or JSON lines)")
    s.add_argument("--format", choices=["json", "csv"])
    s.add_argument("--counterexample", default="counterexample.json")
    s.add_argument("--timing", action="store_true", help="fill the ms column (breaks byte-identical output)")
    s.add_argument("--no-halt", action="store_true")
    s.set_defaults(func=cmd_sweep)

    k = sub.add_parser("counting", help="exact checks of the counting lemmas")
    k.add_argument("--omega", type=int, required=True)
    k.add_argument("--tmax", type=int, default=20)
    k.set_defaults(func=cmd_counting)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as err:
        print(f"locdim: {err}", file=sys.stderr)
        return EXIT_USAGE
    except GraphError as err:
        print(f"locdim: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
