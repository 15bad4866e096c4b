"""Computational group theory kernels: permutation and matrix groups, coset
enumeration, modules over prime fields, character-theoretic order formulas,
double cosets and second cohomology."""

from ._cgtk import (
    BudgetExceeded,
    DimensionMismatch,
    Error,
    FieldMismatch,
    NotFound,
    ParseError,
    PreconditionError,
    SingularMatrix,
    check_class_data,
    coset_enumerate,
    double_coset_count,
    dual_generators,
    factorization,
    h2_dimension,
    matrix_group_order,
    meataxe,
    module_isomorphism,
    permutation_group_order,
    thompson_identity_check,
    thompson_order,
)

__all__ = [
    "BudgetExceeded",
    "DimensionMismatch",
    "Error",
    "FieldMismatch",
    "NotFound",
    "ParseError",
    "PreconditionError",
    "SingularMatrix",
    "check_class_data",
    "coset_enumerate",
    "double_coset_count",
    "dual_generators",
    "factorization",
    "h2_dimension",
    "matrix_group_order",
    "meataxe",
    "module_isomorphism",
    "permutation_group_order",
    "thompson_identity_check",
    "thompson_order",
]
