"""Exact construction and symbolic verification of truncated Euler
polynomials and their relatives: hypergeometric Bernoulli, classical
Bernoulli and Euler, and Frobenius-Euler families, all over exact rational
arithmetic. Each family has two independent construction routes and a
catalog of cross-identities verified by polynomial expansion."""

from .algebra import (
    ONE,
    X,
    Y,
    ZERO,
    MultiPoly,
    Rational,
    StirlingTable,
    binomial,
    falling_factorial_poly,
    rising_factorial_poly,
    stirling2,
)
from .families import (
    FamilyKind,
    FamilySpec,
    PolyCache,
    classical_bernoulli_poly,
    classical_euler_poly,
    clear_caches,
    closed_form_m1,
    frobenius_euler_poly,
    hypergeom_bernoulli_poly,
    truncated_euler_number,
    truncated_euler_poly,
    truncated_euler_poly_oracle,
)
from .identities import (
    DEFAULT_LAMBDAS,
    DEFAULT_M_MAX,
    DEFAULT_N_MAX,
    DEFAULT_R_MAX,
    GridResult,
    IdentityId,
    IdentityReport,
    check_C1,
    check_C2,
    check_T3,
    check_T4,
    check_T5,
    check_T6,
    check_T7,
    check_T8,
    check_T9,
    check_umbral,
    power_shift_families,
    umbral_transfer,
    verify_grid,
)
from .series import (
    TruncSeries,
    coeff_egf,
    exp_series,
    monomial_series,
    series_inverse,
    series_mul,
    series_truncate,
    truncated_exp_tail,
)

__version__ = "0.1.0"

__all__ = [
    "ONE",
    "X",
    "Y",
    "ZERO",
    "MultiPoly",
    "Rational",
    "StirlingTable",
    "binomial",
    "falling_factorial_poly",
    "rising_factorial_poly",
    "stirling2",
    "FamilyKind",
    "FamilySpec",
    "PolyCache",
    "classical_bernoulli_poly",
    "classical_euler_poly",
    "clear_caches",
    "closed_form_m1",
    "frobenius_euler_poly",
    "hypergeom_bernoulli_poly",
    "truncated_euler_number",
    "truncated_euler_poly",
    "truncated_euler_poly_oracle",
    "DEFAULT_LAMBDAS",
    "DEFAULT_M_MAX",
    "DEFAULT_N_MAX",
    "DEFAULT_R_MAX",
    "GridResult",
    "IdentityId",
    "IdentityReport",
    "check_C1",
    "check_C2",
    "check_T3",
    "check_T4",
    "check_T5",
    "check_T6",
    "check_T7",
    "check_T8",
    "check_T9",
    "check_umbral",
    "power_shift_families",
    "umbral_transfer",
    "verify_grid",
    "TruncSeries",
    "coeff_egf",
    "exp_series",
    "monomial_series",
    "series_inverse",
    "series_mul",
    "series_truncate",
    "truncated_exp_tail",
    "__version__",
]
