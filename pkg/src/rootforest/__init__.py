"""Higher-dimensional rooted forests: boundary matrices, Laplacian
characteristic polynomials, homologically weighted forest enumeration and
fitting orientations, all in exact integer arithmetic."""

from .complexes import (CellComplex, ComplexError, SimplicialComplex, boundary_matrix,
                        build_simplicial, gen_bipyramid, gen_complete, gen_hypercube,
                        gen_projective_plane_6, gen_simplex_boundary)
from .forests import (CapExceeded, NotRootedForest, RootedForest, WeightAssignment,
                      enumerate_rooted_forests, homology_structure, homology_weight,
                      is_forest, is_relatively_free, is_relatively_generating, is_root,
                      is_rooted_forest, is_spanning, laplacian, laplacian_polynomial,
                      matrix_tree_rhs, rooted_forest_polynomial, weighted_laplacian,
                      weighted_rooted_forest_sum)
from .linalg import IntPoly, SmithForm, char_poly_shifted, det, rank, smith_normal_form, submatrix
from .orientations import (FittingOrientation, StripDecomposition, bidirected_polynomial,
                           enumerate_fitting_orientations, orientation_sign,
                           signed_orientation_sum, strip_decomposition, sum_lambda_unrooted,
                           weighted_bidirected_sum)

__version__ = "0.1.0"
