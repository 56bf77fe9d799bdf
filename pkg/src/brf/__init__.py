"""Maximum independent sets and minimum hitting sets of bicolored
rectangular families, with exact oracles for checking them."""
from .errors import BRFError
from .geometry import Instance, Point, Rect, Region, corner_free, gamma, intersects, normalize
from .enumeration import greedy_cfi, minimal_rectangles
from .solver import Solution, export_graph_side, solve, verify_solution
from .weighted import (WeightedInstance, is_bipartite_permutation, reduction_from_rectangles,
                       wmis_permutation)
from .generators import GenSpec, generate

__version__ = "0.1.0"

__all__ = [
    "BRFError", "Instance", "Point", "Rect", "Region", "corner_free", "gamma", "intersects",
    "normalize", "greedy_cfi", "minimal_rectangles", "Solution", "export_graph_side", "solve",
    "verify_solution", "WeightedInstance", "is_bipartite_permutation",
    "reduction_from_rectangles", "wmis_permutation", "GenSpec", "generate",
]
