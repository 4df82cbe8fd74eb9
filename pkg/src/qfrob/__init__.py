"""Exact p-adic Frobenius structures for small quantum connections."""

from .analysis import (
    BettiComparison,
    CharPolySeries,
    FitResult,
    NewtonPolygon,
    PiThetaReport,
    ValuationProfile,
    betti_comparison,
    char_poly,
    char_poly_newton,
    det_series_residual,
    growth_rate_fit,
    newton_polygon,
    profile_csv_rows,
    val_at_pi_theta,
    valuation_profile,
)
from .approx import ApproxPadic
from .cohomology import (
    ChernCharacterData,
    CohomologyRing,
    GammaMonomialDecomposition,
    chern_to_ch,
    constant_term_endomorphism,
    gamma_class,
    gamma_monomial_decomposition,
)
from .connection import (
    Connection,
    FrobeniusSolution,
    GaugeSolution,
    combine_basis_solutions,
    frobenius_from_gauge,
    frobenius_residual,
    gauge_residual,
    solve_frobenius,
    solve_frobenius_basis,
    solve_gauge,
    symbolic_constant_term,
)
from .errors import (
    ComparisonError,
    PrecisionError,
    QfrobError,
    ValidationError,
)
from .fileformat import (
    connection_to_document,
    document_to_connection,
    parse_connection,
    serialize_connection,
)
from .gammasym import GammaPoly
from .registry import builtin, list_builtins, projective_space_ring, truncated_power_ring
from .satake import (
    SatakeComparison,
    WedgeBasis,
    gaussian_binomial,
    grassmannian_connection,
    grassmannian_direct,
    grassmannian_frobenius,
    lambda_group,
    lambda_group_series,
    lambda_lie,
    satake_compare,
    wedge_basis,
)
from .special import (
    GammaDerivatives,
    dwork_coefficients,
    gamma_derivatives,
    log_gamma_coefficients,
    log_gamma_polys,
    mahler_truncation_bound,
)
from .valuation import INDETERMINATE, INF, PrimeContext, is_finite, val_min, val_p

__all__ = [
    "ApproxPadic",
    "BettiComparison",
    "CharPolySeries",
    "ChernCharacterData",
    "CohomologyRing",
    "ComparisonError",
    "Connection",
    "FitResult",
    "FrobeniusSolution",
    "GammaDerivatives",
    "GammaMonomialDecomposition",
    "GammaPoly",
    "GaugeSolution",
    "INDETERMINATE",
    "INF",
    "NewtonPolygon",
    "PiThetaReport",
    "PrecisionError",
    "PrimeContext",
    "QfrobError",
    "SatakeComparison",
    "ValidationError",
    "ValuationProfile",
    "WedgeBasis",
    "betti_comparison",
    "builtin",
    "char_poly",
    "char_poly_newton",
    "chern_to_ch",
    "combine_basis_solutions",
    "connection_to_document",
    "constant_term_endomorphism",
    "det_series_residual",
    "document_to_connection",
    "dwork_coefficients",
    "frobenius_from_gauge",
    "frobenius_residual",
    "gamma_class",
    "gamma_derivatives",
    "gamma_monomial_decomposition",
    "gauge_residual",
    "gaussian_binomial",
    "grassmannian_connection",
    "grassmannian_direct",
    "grassmannian_frobenius",
    "growth_rate_fit",
    "is_finite",
    "lambda_group",
    "lambda_group_series",
    "lambda_lie",
    "list_builtins",
    "log_gamma_coefficients",
    "log_gamma_polys",
    "mahler_truncation_bound",
    "newton_polygon",
    "parse_connection",
    "profile_csv_rows",
    "projective_space_ring",
    "satake_compare",
    "serialize_connection",
    "solve_frobenius",
    "solve_frobenius_basis",
    "solve_gauge",
    "symbolic_constant_term",
    "truncated_power_ring",
    "val_at_pi_theta",
    "val_min",
    "val_p",
    "valuation_profile",
    "wedge_basis",
]
