"""Exact solvers for the consistency width of graph homomorphism problems."""

from .coloring_game import (NoWin, Winner, check_tree_lemmas, enumerate_Mkr, game_value, is_minimal_member,
                            min_capacity, min_rounds, separator_strategy_check)
from .consistency import (SpoilerStrategy, WidthReport, homomorphism_exists, k_consistent, next_spoiler_move,
                          width, width_via_game_crosscheck)
from .graphs import (Graph, PrecoloredGraph, balanced_separator_number, categorical_product, chromatic_number,
                     count_proper_colorings, diameter, girth, independence_number, treewidth_exact)
from .canonical import CanonicalForm, canonical_form

__version__ = "0.1.0"

__all__ = [
    "CanonicalForm", "Graph", "NoWin", "PrecoloredGraph", "SpoilerStrategy", "WidthReport", "Winner",
    "balanced_separator_number", "canonical_form", "categorical_product", "check_tree_lemmas",
    "chromatic_number", "count_proper_colorings", "diameter", "enumerate_Mkr", "game_value", "girth",
    "homomorphism_exists", "independence_number", "is_minimal_member", "k_consistent", "min_capacity",
    "min_rounds", "next_spoiler_move", "separator_strategy_check", "treewidth_exact", "width",
    "width_via_game_crosscheck",
]
