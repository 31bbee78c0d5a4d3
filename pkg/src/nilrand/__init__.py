"""Exact algebra and seeded Monte Carlo experiments for quotients of free
nilpotent groups by random relators."""

__version__ = "0.1.0"

from .heiscalc import (MalcevTriple, basis_change_reduce, heis_conj, heis_inv,
                       heis_mul, heis_pow, malcev_coords, signed_area,
                       weight_vector)
from .intlinalg import (IntMatrix, SmithForm, cokernel_invariants, det,
                        gcd_vec, is_primitive, kernel_matrix, rank_and_dim,
                        snf, span_min_gcd)
from .quotients import (FiniteGroupTable, GroupDescriptor, QuotientOrder,
                        build_finite_quotient, classify_one_relator,
                        element_order_census, heis_quotient_order,
                        hirsch_length, identify_small_group, lcs_report,
                        necklace, nilpotent_quotient_profile)
from .randwalk import (RngStream, Word, random_reduced_word, random_relator,
                       random_string)

__all__ = [
    "MalcevTriple", "basis_change_reduce", "heis_conj", "heis_inv",
    "heis_mul", "heis_pow", "malcev_coords", "signed_area", "weight_vector",
    "IntMatrix", "SmithForm", "cokernel_invariants", "det", "gcd_vec",
    "is_primitive", "kernel_matrix", "rank_and_dim", "snf", "span_min_gcd",
    "FiniteGroupTable", "GroupDescriptor", "QuotientOrder",
    "build_finite_quotient", "classify_one_relator", "element_order_census",
    "heis_quotient_order", "hirsch_length", "identify_small_group",
    "lcs_report", "necklace", "nilpotent_quotient_profile",
    "RngStream", "Word", "random_reduced_word", "random_relator",
    "random_string",
]
