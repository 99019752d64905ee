"""gramlab: an exact rational workbench for Gram (discrete Chebyshev)
polynomial bases, best polynomial approximation on finite grids, and
extremal k-wise indistinguishable symmetric distribution pairs.

Everything in the computational core is exact (`fractions.Fraction`);
floating point appears only in report rendering.
"""

from .arith import (
    AffineMap,
    Grid,
    GridKind,
    Poly,
    as_rational,
    grid_points,
    inner_product,
    point_to_weight,
    poly_affine_compose,
    stretch_map,
    weight_to_point,
)
from .approx import (
    ApproxCertificate,
    linf_best_approx,
    monomial_gram_truncation,
    monomial_hardness_ref,
    shift_reduce,
    uniform_reference_error,
    verify_certificate,
)
from .distributions import (
    SymmetricDist,
    SymmetricTestSet,
    advantage,
    best_symmetric_test,
    factorial_moment,
    is_jwise_indist,
    marginal,
    tv_distance,
)
from .exceptions import ConsistencyError, ParityError, SimplexError
from .extremal import (
    BoundReport,
    DualityCell,
    ExtremalPair,
    SandwichCheck,
    TvMode,
    bound_b_sq,
    duality_check,
    extremal_pair_for_test,
    extremal_tv,
    verify_sandwich,
)
from .gram import (
    GramExpansion,
    OrthoBasis,
    alpha_sq,
    basis_inner_products,
    build_basis_gs,
    build_basis_recurrence,
    gram_expand,
    l2_best_approx,
    leading_coeff_envelope,
    monomial_leading_coeff_sq,
)
from .simplex import LinearProgram, LPSolution, Rel, solve_lp
from .symmetrize import (
    CwArgmax,
    SymmetrizedTest,
    build_pw,
    cw_argmax,
    cw_closed_form,
    double_factorial,
    hypergeometric_pmf,
    pi_bracket,
    predicted_zeros,
    two_over_pi_bracket,
    wallis_closed_form,
    wallis_product,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "ApproxCertificate",
    "BoundReport",
    "ConsistencyError",
    "CwArgmax",
    "DualityCell",
    "ExtremalPair",
    "GramExpansion",
    "Grid",
    "GridKind",
    "LPSolution",
    "LinearProgram",
    "OrthoBasis",
    "ParityError",
    "Poly",
    "Rel",
    "SandwichCheck",
    "SimplexError",
    "SymmetricDist",
    "SymmetricTestSet",
    "SymmetrizedTest",
    "TvMode",
    "advantage",
    "alpha_sq",
    "as_rational",
    "basis_inner_products",
    "best_symmetric_test",
    "bound_b_sq",
    "build_basis_gs",
    "build_basis_recurrence",
    "build_pw",
    "cw_argmax",
    "cw_closed_form",
    "double_factorial",
    "duality_check",
    "extremal_pair_for_test",
    "extremal_tv",
    "factorial_moment",
    "gram_expand",
    "grid_points",
    "hypergeometric_pmf",
    "inner_product",
    "is_jwise_indist",
    "l2_best_approx",
    "leading_coeff_envelope",
    "linf_best_approx",
    "marginal",
    "monomial_gram_truncation",
    "monomial_hardness_ref",
    "monomial_leading_coeff_sq",
    "pi_bracket",
    "point_to_weight",
    "poly_affine_compose",
    "predicted_zeros",
    "shift_reduce",
    "solve_lp",
    "stretch_map",
    "tv_distance",
    "two_over_pi_bracket",
    "uniform_reference_error",
    "verify_certificate",
    "verify_sandwich",
    "weight_to_point",
    "wallis_closed_form",
    "wallis_product",
]
