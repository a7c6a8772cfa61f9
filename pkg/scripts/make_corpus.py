"""Write isomorph-free graph6 corpora (connected graphs on exactly N vertices).

N <= 7 comes straight from the networkx atlas.  N = 8 is built by adding one
vertex to every 7-vertex atlas graph in all possible ways and keeping one
graph per nauty certificate (every 8-vertex graph arises this way).

    python3 scripts/make_corpus.py 8 -o corpus8.g6
"""

import argparse
import sys

import networkx as nx

from locdim.graph import encode_graph6, from_edges


def atlas_graphs(n):
    return [g for g in nx.graph_atlas_g() if g.number_of_nodes() == n]


def extend_by_one(graphs, n):
    import pynauty

    seen = {}
    for g in graphs:
        base = {v: set(g[v]) for v in range(n - 1)}
        for nbrs in range(1 << (n - 1)):
            adj = {v: set(base[v]) for v in base}
            adj[n - 1] = {v for v in range(n - 1) if nbrs >> v & 1}
            for v in adj[n - 1]:
                adj[v].add(n - 1)
            cert = pynauty.certificate(pynauty.Graph(n, adjacency_dict={v: sorted(a) for v, a in adj.items()}))
            if cert not in seen:
                seen[cert] = [(u, v) for u in adj for v in adj[u] if u < v]
    return [nx.Graph(e) if e else nx.empty_graph(n) for e in seen.values()]


def corpus(n):
    if n <= 7:
        pool = atlas_graphs(n)
    elif n == 8:
        pool = extend_by_one(atlas_graphs(7), 8)
    else:
        raise SystemExit("only n <= 8 is supported")
    out = []
    for g in pool:
        g.add_nodes_from(range(n))
        if nx.is_connected(g):
            out.append(encode_graph6(from_edges(n, list(g.edges()))))
    return sorted(out)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("n", type=int)
    p.add_argument("-o", "--out")
    args = p.parse_args(argv)
    tokens = corpus(args.n)
    fh = open(args.out, "w") if args.out else sys.stdout
    with fh:
        fh.write("\n".join(tokens) + "\n")
    print(f"{len(tokens)} connected graphs on {args.n} vertices", file=sys.stderr)


if __name__ == "__main__":
    main()
