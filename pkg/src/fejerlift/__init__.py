"""Fejér divisor filters, divisor lifts and prime indicators with certified tail bounds."""

from types import ModuleType as _ModuleType

from .arith import (
    ArithTable,
    chebyshev_psi,
    dirichlet_convolve,
    divisors,
    factorize,
    is_prime,
    mobius,
    primes_up_to,
    von_mangoldt,
)
from .budget import BudgetInsufficient, CertifiedValue, TruncationBudget
from .indicator import (
    AbelConvergenceError,
    RegimeQ,
    abel_extrapolate,
    indicator_alternating_limit,
    indicator_F,
    indicator_Fsharp,
    indicator_grid,
    indicator_integer,
    q_analog_sigma,
    q_analog_tau,
    s_q,
)
from .kernel import ComplexPoint, fejer_F, phi, phi_deriv, phi_infty
from .lift import (
    WeightSpec,
    lift_eval,
    lift_integer,
    renorm_lift_mu_lambda,
    spectral_derivative_s0,
    two_var_lift,
    weight_dirichlet_series,
)
from .special import (
    DirichletCharacter,
    characters_mod,
    dilog,
    dirichlet_L,
    eta,
    eta_Q,
    gauss_sum,
    hurwitz_zeta,
    lerch_phi,
    polylog,
    zeta,
    zeta_prime,
)
from .spectral import (
    SeriesCheck,
    ZetaZeroTable,
    default_zeros_path,
    explicit_formula_psi,
    load_zeros,
    reconstruct_zeta,
    verify_lerch_bridge,
    verify_lerch_characters,
    verify_lerch_deformation,
    verify_lift_factorization,
    verify_polylog_zeta,
    verify_qminus1,
    verify_qnegQ,
    verify_zeta_zeta_prime,
)
from .windows import (
    CompanionZero,
    WindowConstants,
    WindowReport,
    compute_constants,
    conservative_lower_eval,
    curvature_K,
    find_companion,
    third_deriv_budget,
    threshold_P0,
    uniqueness_certificate,
    verify_window,
)

__version__ = "0.1.0"

__all__ = sorted(n for n, v in globals().items() if not n.startswith("_") and not isinstance(v, _ModuleType))
