"""Dual complexes of simple-normal-crossings divisors and their topology."""

from .complex import (Cell, DualComplex, barycentric_subdivision, build_dual_complex, complex_to_model,
                      connected_components, count_components, euler_characteristic, f_vector, star_subdivision)
from .families import (bundled_cdv_models, cone_family, gordon_family, load_bundled, random_cover,
                       random_snc_model, tree_family)
from .homology import (ChainComplex, HomologyGroup, betti_numbers, cochain_complex_delta, homology,
                       homology_groups, reduced_betti_numbers, smith_normal_form, verify_rational_vanishing)
from .model import ModelError, Piece, SNCModel, Violation, load_model, make_model, read_model, validate
from .nerve import TriangulatedCover, build_nerve_map, check_surjective, fiber_components, validate_cover
from .pi1 import (Connectivity, Contractibility, abelianization, contractibility_verdict_dim2,
                  edge_path_presentation, greedy_collapse, simple_connectivity_verdict, tietze_simplify)

__version__ = "0.1.0"

__all__ = [
    "Cell", "DualComplex", "barycentric_subdivision", "build_dual_complex", "complex_to_model",
    "connected_components", "count_components", "euler_characteristic", "f_vector", "star_subdivision",
    "bundled_cdv_models", "cone_family", "gordon_family", "load_bundled", "random_cover",
    "random_snc_model", "tree_family",
    "ChainComplex", "HomologyGroup", "betti_numbers", "cochain_complex_delta", "homology",
    "homology_groups", "reduced_betti_numbers", "smith_normal_form", "verify_rational_vanishing",
    "ModelError", "Piece", "SNCModel", "Violation", "load_model", "make_model", "read_model", "validate",
    "TriangulatedCover", "build_nerve_map", "check_surjective", "fiber_components", "validate_cover",
    "Connectivity", "Contractibility", "abelianization", "contractibility_verdict_dim2",
    "edge_path_presentation", "greedy_collapse", "simple_connectivity_verdict", "tietze_simplify",
]
