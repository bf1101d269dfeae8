"""Exact solver for planar disjoint-paths completion on sphere-embedded
graphs."""

from .cactus import CactusBoundary, validate_cactus
from .dp import DpInstance, DpSolution, rooted_topminor, solve_dp
from .instance import PdpcInstance, reduce_active, validate_instance
from .reduction import even_infix, normalize_patch, reduce_step, reduce_to_fixpoint
from .solver import (Solution, brute_oracle, certify_realizable, min_solve,
                     placement_feasible, solve)
from .universe import enum_certificates, enum_completions, enum_pairs, patch_bound

__all__ = [
    "CactusBoundary", "validate_cactus",
    "DpInstance", "DpSolution", "rooted_topminor", "solve_dp",
    "PdpcInstance", "reduce_active", "validate_instance",
    "even_infix", "normalize_patch", "reduce_step", "reduce_to_fixpoint",
    "Solution", "brute_oracle", "certify_realizable", "min_solve",
    "placement_feasible", "solve",
    "enum_certificates", "enum_completions", "enum_pairs", "patch_bound",
]
