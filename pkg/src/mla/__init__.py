"""Minimum Labeling Alignment: model, exact solvers and the cubic vertex cover reduction."""

from .graph import CubicGraph, gen_k4, gen_random_cubic, order_edges, vc_approx_matching, vc_exact
from .labeling import DupEvent, Labeling, LossEvent, is_feasible, labeling_cost, validate_cover
from .mapping import cover_to_labeling, labeling_to_cover, lreduction_report, normalize_labeling
from .model import AlignedPair, Genome, Interval, parse_alignment
from .reduction import BlockMap, reduce_graph
from .solver import brute_force_oracle, solve_block_relaxed, solve_exact
from .tokens import SymbolToken

__all__ = [
    "AlignedPair",
    "BlockMap",
    "CubicGraph",
    "DupEvent",
    "Genome",
    "Interval",
    "Labeling",
    "LossEvent",
    "SymbolToken",
    "brute_force_oracle",
    "cover_to_labeling",
    "gen_k4",
    "gen_random_cubic",
    "is_feasible",
    "labeling_cost",
    "labeling_to_cover",
    "lreduction_report",
    "normalize_labeling",
    "order_edges",
    "parse_alignment",
    "reduce_graph",
    "solve_block_relaxed",
    "solve_exact",
    "validate_cover",
    "vc_approx_matching",
    "vc_exact",
]
