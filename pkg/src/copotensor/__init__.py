"""Copositivity certification for symmetric tensors.

Inner approximations (non-negative coefficients, sum-of-squares Gram
feasibility, simplicial partitions) and outer approximations (partition
vertices, rational grids), with a brute-force oracle for validation.
"""

from .combinatorics import elementary_symmetric, enumerate_exponents, multinomial
from .gridcone import cumulative_grid, grid_points, member_O_r
from .partition import (Certificate, Partition, Simplex, Verdict,
                        bisect_longest_edge, certify_copositivity, diameter,
                        grid_partition, inner_test_full, member_I_P,
                        member_O_P, refine, standard_simplex, trivial_partition)
from .polycone import (PolyExpansion, expand_Pr, expand_Pr_closed_form,
                       expand_Pr_convolved, member_C_r)
from .soscone import (GramProblem, build_gram_problem, check_certificate,
                      member_K_r, solve_gram)
from .tensor import (SymTensor, SymTensorBuilder, canonicalize, diag_tensor,
                     eval_form, from_matrix, inner_product, mixed_rank_one,
                     multi_product, necessary_screen, rank_one)

__version__ = "0.1.0"
