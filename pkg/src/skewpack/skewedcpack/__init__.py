"""Compartmental packing of skewed rectangles.

Submodules follow the pipeline: ``grid`` builds the admissible
x-coordinates, ``discretize`` and ``compartments`` turn a fractional bin
into compartments, ``enumeration`` streams candidate compartment packings,
``feasibility`` decides whether the items fit one, ``greedy`` fills it and
``pipeline`` ties everything together.
"""

from .compartments import TALL, WIDE, Compartment, CompartmentPacking, check_bin_compartments, compartmentalize_bin
from .discretize import DiscretizeResult, discretize_bin, fractional_rules, wide_levels
from .enumeration import Caps, PackingStream, candidate_compartments, iter_compartment_packings
from .feasibility import Config, Feasible, TallConfig, WideConfig, solve_feasibility, solve_side
from .greedy import GreedyResult, discard_bound, greedy_cpack
from .grid import MAX_GRID, GridT, GridTooLarge, grid_T
from .pipeline import skewed_cpack, structural_bound

__all__ = [
    "TALL", "WIDE", "Compartment", "CompartmentPacking", "check_bin_compartments",
    "compartmentalize_bin", "DiscretizeResult", "discretize_bin", "fractional_rules",
    "wide_levels", "Caps", "PackingStream", "candidate_compartments",
    "iter_compartment_packings", "Config", "Feasible", "TallConfig", "WideConfig",
    "solve_feasibility", "solve_side", "GreedyResult", "discard_bound", "greedy_cpack",
    "MAX_GRID", "GridT", "GridTooLarge", "grid_T", "skewed_cpack", "structural_bound",
]
