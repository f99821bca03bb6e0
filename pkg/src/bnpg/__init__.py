"""Exact solvers for binary networked public goods games with altruism."""

from .anm import INF, ANMInstance, EditSet, apply_edits, decompose_anm_asymmetric, solve_anm_asymmetric, validate_anm
from .errors import (BNPGError, DocumentSyntaxError, GuardError, InstanceError, InvariantError,
                     NotApplicableError, SchemaError, TableRangeError)
from .game import (AltruismNetwork, BNPGGame, InputGraph, expected_utility, utility, validate_game,
                   verify_eps_ne, verify_psne)
from .generate import generate_instance
from .io import InstanceDocument, parse_instance, serialize_instance
from .knapsack import KnapsackInstance, max_knapsack_mitm, min_knapsack
from .oracle import brute_anm, brute_max_knapsack, brute_min_knapsack, brute_sat, enumerate_psne
from .reductions import (DirectedPGG, SatInstance, dpgg_to_bnpg, homogenize, homogenize_bounded_degree,
                         knapsack_to_anm, map_mixed_back, sat_to_anm)
from .structured import circuit_rank, solve_bounded_circuit_rank_psne, solve_clique_psne
from .tree import GreedySelectionInput, greedy_select, solve_tree_psne, solve_tree_psne_constrained

__all__ = [name for name in dir() if not name.startswith("_")]
