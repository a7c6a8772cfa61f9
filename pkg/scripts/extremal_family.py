"""Table of the windmill family gtw(t, w): exact dimensions, bound and constructed sizes."""

import argparse

from locdim.construct import construct_lars
from locdim.dims import Variant, dimension
from locdim.graph import gtw
from locdim.verify import bound


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--tmax", type=int, default=5)
    p.add_argument("--wmax", type=int, default=6)
    p.add_argument("--exact-max-n", type=int, default=13, help="skip exact solving above this order")
    args = p.parse_args(argv)
    print(f"{'t':>2} {'w':>2} {'n':>3} {'bound':>5} {'dim_l':>5} {'dim_al':>6} {'faithful':>8} {'pruned':>6}")
    for w in range(3, args.wmax + 1):
        for t in range(2, args.tmax + 1):
            G = gtw(t, w)
            exact = G.n <= args.exact_max_n
            dl = dimension(G, Variant.LOCAL_METRIC) if exact else "-"
            dal = dimension(G, Variant.LOCAL_ADJACENCY) if exact else "-"
            res = construct_lars(G, "pruned")
            print(f"{t:>2} {w:>2} {G.n:>3} {bound(G.n, w):>5} {dl!s:>5} {dal!s:>6} "
                  f"{len(res.faithful):>8} {res.size:>6}")


if __name__ == "__main__":
    main()
