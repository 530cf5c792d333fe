"""Exact computer algebra for the rank-two Schur algebras S(2,d).

The package models the algebra by its presentation on e, f and the diagonal
generators, normalizes words onto the truncated Kostant basis, multiplies in
the quotient, and cross-checks everything against two independent matrix
models. All arithmetic is integer or rational and exact.
"""

from .algebra import (
    RelationReport,
    SchurContext,
    StructureTable,
    basis,
    check_relations,
    dimension,
    expected_h_min_poly,
    expected_h_var_min_poly,
    from_h_basis,
    from_power_basis,
    min_poly,
    mul_bd,
    normalize,
    quotient_map_check,
    reduce_monomial,
    structure_constants,
    to_h_basis,
    to_power_basis,
)
from .elements import (
    Element,
    Flavor,
    commute_e_past_fdiv,
    commute_poly_left,
    fdiv_merge,
    mul,
    render_element,
    substitute_offvar,
)
from .exprs import ParseError, lower, parse, parse_element
from .ivpoly import (
    IVPoly,
    binom,
    ivp_complement,
    ivp_from_values,
    ivp_product,
    ivp_shift,
)
from .oracle import (
    Rep,
    VerifyReport,
    eval_element,
    matrix_min_poly,
    rank_of_images,
    tensor_rep,
    verify_suite,
    weight_rep,
)
from .qpoly import prender

__version__ = "0.1.0"

__all__ = [
    "Element",
    "Flavor",
    "IVPoly",
    "ParseError",
    "RelationReport",
    "Rep",
    "SchurContext",
    "StructureTable",
    "VerifyReport",
    "basis",
    "binom",
    "check_relations",
    "commute_e_past_fdiv",
    "commute_poly_left",
    "dimension",
    "eval_element",
    "expected_h_min_poly",
    "expected_h_var_min_poly",
    "fdiv_merge",
    "from_h_basis",
    "from_power_basis",
    "ivp_complement",
    "ivp_from_values",
    "ivp_product",
    "ivp_shift",
    "lower",
    "matrix_min_poly",
    "min_poly",
    "mul",
    "mul_bd",
    "normalize",
    "parse",
    "parse_element",
    "prender",
    "quotient_map_check",
    "rank_of_images",
    "reduce_monomial",
    "render_element",
    "structure_constants",
    "substitute_offvar",
    "tensor_rep",
    "verify_suite",
    "weight_rep",
    "__version__",
]
