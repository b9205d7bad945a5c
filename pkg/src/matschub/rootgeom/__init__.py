"""Exact lattice geometry for root polytopes of bipartite diagram graphs."""

from .linalg import AffineFrame, lattice_index, rank, rref
from .nat import (
    DiagramGraph, diagram_graph, dprime_completion, forest_path_bijection, forest_to_paths,
    is_alternating, is_noncrossing, monotone_paths, nat_triangulation, path_count,
    paths_to_forest, regularity_certificate, root_polytope,
)
from .polytope import (
    LatticePolytope, affine_dimension, facets, normalized_volume, pulling_triangulation,
    total_volume,
)
from .triangulation import Triangulation, validate_triangulation

__all__ = [
    "AffineFrame", "lattice_index", "rank", "rref", "DiagramGraph", "diagram_graph",
    "dprime_completion", "forest_path_bijection", "forest_to_paths", "is_alternating",
    "is_noncrossing", "monotone_paths", "nat_triangulation", "path_count", "paths_to_forest",
    "regularity_certificate", "root_polytope", "LatticePolytope", "affine_dimension", "facets",
    "normalized_volume", "pulling_triangulation", "total_volume", "Triangulation",
    "validate_triangulation",
]
