"""Generalized Hamming weights of matrix-product codes over small finite fields."""

from .bounds import (
    BoundReport, extended_ghw, ghw_closed_form_mds, lb_2x2, lb_general_exhaustive, lb_h2_nested,
    lb_h3_nested, lb_h3_s2, min_dist_lower_bound, min_dist_lower_bound_nsc, rs_ghw_closed_form, ub_ghw,
)
from .codes import (
    LinearCode, code_from_generator, code_intersection, code_sum, enumerate_subspaces, ghw,
    ghw_witness, is_subcode, min_distance, shorten_blocks, support_blocks, weight_hierarchy,
)
from .families import rm_code, rm_recursive_rhs, rs_code
from .gfield import GF, Field, field_new
from .linalg import Matrix
from .mpc import MpcCode, grm_matrix, is_nsc, mpc_construct, row_code_delta, vandermonde_matrix

__version__ = "0.1.0"
