"""Exhaustive checks over every labeled graph on up to N vertices (N <= 7).

Two passes:
  * vectorized: main bound, inequality chain and the dim_l results;
  * per graph (``--construct``): packing properties and the constructed sets.

    python3 scripts/exhaustive_check.py 7 --construct --out summary.json
"""

import argparse
import json
import time

from locdim.batch import exhaustive_tally
from locdim.sweep import SweepConfig, run_sweep


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("n", type=int)
    p.add_argument("--construct", action="store_true", help="also run the per-graph construction sweep")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    args = p.parse_args(argv)

    result = {"tally": {}, "construction": {}}
    for n in range(1, args.n + 1):
        t0 = time.perf_counter()
        tally = exhaustive_tally(n)
        result["tally"][n] = {
            "graphs": tally.graphs, "connected": tally.connected, "applicable": tally.applicable,
            "equality": tally.equality, "violations": tally.violations, "seconds": round(time.perf_counter() - t0, 2),
        }
        print(f"n={n}: {tally.applicable} applicable, {tally.total_violations} violations, "
              f"{tally.equality} equalities")
    if args.construct:
        for n in range(4, args.n + 1):
            t0 = time.perf_counter()
            summary = run_sweep(SweepConfig(builtin_n=n, builtin_min_n=n, checks=("construct", "packing"),
                                            variants=(), jobs=args.jobs))
            d = summary.to_dict()
            d["seconds"] = round(time.perf_counter() - t0, 1)
            result["construction"][n] = d
            print(f"n={n}: {summary.rows} constructions, {len(summary.failures)} failed rows, "
                  f"pruned overshoot (w >= 4) {len(summary.pruned_overshoot_w4)}, "
                  f"faithful overshoot {len(summary.faithful_overshoot)}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(result, fh, indent=2)


if __name__ == "__main__":
    main()
