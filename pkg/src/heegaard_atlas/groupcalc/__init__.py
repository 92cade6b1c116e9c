"""Group invariants: coset enumeration, abelianization, matrix and permutation quotients."""

from .cosets import DEFAULT_MAX_COSETS, CosetTable, EnumerationResult, Exhausted, Index, enumerate_cosets, todd_coxeter
from .matrices import MatrixAssignment, check_homomorphism, evaluate_word, integer_inverse
from .quotients import (
    QuotientWitness,
    TargetTooLarge,
    closure,
    klein_four,
    perm_from_cycles,
    psl_2_7,
    quotient_search,
    verify_quotient_witness,
)
from .smith import AbelianGroup, determinant, exponent_matrix, homology_h1, matmul, smith_normal_form

__all__ = [
    "AbelianGroup",
    "CosetTable",
    "DEFAULT_MAX_COSETS",
    "EnumerationResult",
    "Exhausted",
    "Index",
    "MatrixAssignment",
    "QuotientWitness",
    "TargetTooLarge",
    "check_homomorphism",
    "closure",
    "determinant",
    "enumerate_cosets",
    "evaluate_word",
    "exponent_matrix",
    "homology_h1",
    "integer_inverse",
    "klein_four",
    "matmul",
    "perm_from_cycles",
    "psl_2_7",
    "quotient_search",
    "smith_normal_form",
    "todd_coxeter",
    "verify_quotient_witness",
]
