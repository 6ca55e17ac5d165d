"""Connectivity from global graph queries, with exact query accounting.

The hidden graph is reachable only through :class:`QueryOracle`, whose ledger
counts every matrix-vector, master, cut, cross, BIS and linear query.
"""

from .connectivity import (SpanningForestConfig, find_spanning_forest, recover_one_from_all,
                           rounds_progress_trace)
from .graph import (DisjointSets, Forest, WeightedGraph, connected_components, generate,
                    is_spanning_forest, make_graph, min_cut_brute)
from .oracles import QueryLedger, QueryModelDisabled, QueryOracle, master_from_matvec
from .quantum import ChargePolicy, master_from_bis, master_from_cut

__all__ = [
    "ChargePolicy", "DisjointSets", "Forest", "QueryLedger", "QueryModelDisabled", "QueryOracle",
    "SpanningForestConfig", "WeightedGraph", "connected_components", "find_spanning_forest",
    "generate", "is_spanning_forest", "make_graph", "master_from_bis", "master_from_cut",
    "master_from_matvec", "min_cut_brute", "recover_one_from_all", "rounds_progress_trace",
]
