"""Vertex-disjoint directed cycle packing toolkit.

Graph core, an exact small-graph packing oracle, edge-contraction
machinery, constructive packing algorithms for highly-out digraphs, and
numeric verification of the degree bounds that back them.
"""

from .bounds import (BoundReport, chernoff_split_check, critical_report,
                     critical_vertex_bound, prop3_check, prop3_lhs,
                     prop4_check, recursion_audit, small_case_bounds,
                     threshold_x)
from .contraction import (ContractionRecord, contract, find_witnessless_edge,
                          is_witness_closed, lift_cycle, lift_cycle_through,
                          witness, witness_closure)
from .cycles import (Cycle, OracleBudgetExceeded, Packing, check_packing,
                     find_any_cycle, find_cycle_1out, max_packing_bruteforce,
                     verify_packing)
from .digraph import (Digraph, GenSpec, ParseError, complete_digraph,
                      generate, in_degree, induced_subgraph, is_k_out,
                      out_degree, random_exactly_r_out, read_edge_list,
                      reduce_to_exactly_k_out, write_edge_list)
from .solver import (ImpossibleCaseError, SolveConfig, SolveOutcome,
                     coloring_split, halving_split, solve,
                     two_disjoint_cycles, witness_turan_pack)

__all__ = [
    "BoundReport", "ContractionRecord", "Cycle", "Digraph", "GenSpec",
    "ImpossibleCaseError", "OracleBudgetExceeded", "Packing", "ParseError",
    "SolveConfig", "SolveOutcome", "check_packing", "chernoff_split_check",
    "coloring_split", "complete_digraph", "contract", "critical_report",
    "critical_vertex_bound", "find_any_cycle", "find_cycle_1out",
    "find_witnessless_edge", "generate", "halving_split", "in_degree",
    "induced_subgraph", "is_k_out", "is_witness_closed", "lift_cycle",
    "lift_cycle_through", "max_packing_bruteforce", "out_degree",
    "prop3_check", "prop3_lhs", "prop4_check", "random_exactly_r_out",
    "read_edge_list", "recursion_audit", "reduce_to_exactly_k_out",
    "small_case_bounds", "solve", "threshold_x", "two_disjoint_cycles",
    "verify_packing", "witness", "witness_closure", "witness_turan_pack",
    "write_edge_list",
]

__version__ = "0.1.0"
