from .core_graph import Graph, build_graph
from .families import complete_graph, hh_graph, kneser_graph, shift_graph
from .structure import quotient_matrix, three_cell_partition
from .independence import alpha_exact, best_constructed_set
from .coloring import chi_exact, constructive_coloring, fractional_chromatic
from .homomorphism import orbit_hom, verify_hom
from .automorphism import aut_order, structural_same_tail

__all__ = [
    "Graph",
    "build_graph",
    "hh_graph",
    "kneser_graph",
    "complete_graph",
    "shift_graph",
    "three_cell_partition",
    "quotient_matrix",
    "alpha_exact",
    "best_constructed_set",
    "chi_exact",
    "constructive_coloring",
    "fractional_chromatic",
    "verify_hom",
    "orbit_hom",
    "aut_order",
    "structural_same_tail",
]
