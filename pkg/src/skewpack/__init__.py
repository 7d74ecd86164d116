"""Exact-rational bin packing of skewed rectangles.

The main entry points are re-exported here; submodules hold the details.
"""

from .core import (AXES, HORIZONTAL, KINDS, ONE, VERTICAL, ZERO, BinLayout, ClassifiedItems,
                   FreenessViolation, Instance, InvariantViolation, Item, Layout, Placement,
                   Rect, Report, Rules, SkewnessError, SkewpackError, Slice, StructuralError,
                   Violation, classify_items, decompose_empty_space, find_overlaps,
                   interiors_overlap, make_layout, rat, total_area, validate_layout)
from .grouping import lingroup, remove_medium
from .guillotine import (GuillotineNode, NotGuillotinable, count_stages,
                         extract_guillotine_tree, stage_counts)
from .instances import gen_lower_bound, gen_random_skewed
from .lp import BasicSolution, Constraint, Infeasible, LinearProgram, Unbounded, solve_lp
from .nfdh import nfdh_bins, nfdh_into_region, nfdh_strip
from .oracle import ExceedsMax, oracle_opt
from .s2bp import Piece, greedy_pack
from .skewed4pack import skewed4pack
from .skewedcpack import Caps, grid_T, skewed_cpack

__version__ = "0.1.0"

__all__ = [
    "AXES", "HORIZONTAL", "KINDS", "ONE", "VERTICAL", "ZERO", "BinLayout",
    "ClassifiedItems", "FreenessViolation", "Instance", "InvariantViolation", "Item",
    "Layout", "Placement", "Rect", "Report", "Rules", "SkewnessError", "SkewpackError",
    "Slice", "StructuralError", "Violation", "classify_items", "decompose_empty_space",
    "find_overlaps", "interiors_overlap", "make_layout", "rat", "total_area",
    "validate_layout", "lingroup", "remove_medium", "GuillotineNode", "NotGuillotinable",
    "count_stages", "extract_guillotine_tree", "stage_counts", "gen_lower_bound",
    "gen_random_skewed", "BasicSolution", "Constraint", "Infeasible", "LinearProgram",
    "Unbounded", "solve_lp", "nfdh_bins", "nfdh_into_region", "nfdh_strip", "ExceedsMax",
    "oracle_opt", "Piece", "greedy_pack", "skewed4pack", "Caps", "grid_T", "skewed_cpack",
]
