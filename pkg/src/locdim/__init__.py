"""Local (adjacency) metric dimension versus clique number: exact solvers,
the layered packing construction of a local adjacency resolving set, and
exhaustive small-graph verification."""

from .graph import Graph, decode_graph6, encode_graph6, from_edges, gen_family
from .clique import clique_number, cliques_of_size
from .dims import Variant, is_resolving, min_resolving_set
from .packing import pack_all, check_properties
from .construct import construct_lars, counting_checks
from .verify import bound, theorem_check, known_results_check

__all__ = [
    "Graph", "decode_graph6", "encode_graph6", "from_edges", "gen_family",
    "clique_number", "cliques_of_size",
    "Variant", "is_resolving", "min_resolving_set",
    "pack_all", "check_properties",
    "construct_lars", "counting_checks",
    "bound", "theorem_check", "known_results_check",
]
