"""High-precision asymptotics of Touchard polynomials near saddle coalescence.

Exact reference values come from the Stirling triangle (stirling module);
the asymptotic side provides the coalescence series (theorem1_eval), the
uniform Airy-type approximation (theorem2_eval), and the non-uniform
leading-order forms (poincare.leading_order), all over a small
arbitrary-precision kernel (numkernel) with deterministic, context-pinned
rounding.
"""
from .airy import ABS_Z_LIMIT, AiryMethod, AiryValue, airy, switchover
from .coalescence import (DEFAULT_ORDER, BmTable, ForwardSeries,
                          RationalSeries, compute_bm, default_bm,
                          forward_series, revert_series, theorem1_eval)
from .contours import ContourPolyline, ContourSet, contour_set
from .errors import (BranchError, CapacityError, DomainError,
                     InternalConsistencyError, InvalidPrecisionError,
                     OrderError, PrecisionExhaustedError, RegimeError,
                     SeriesConsistencyError, SolverError, StepError,
                     TouchardError)
from .numkernel import (DEFAULT_DIGITS, MIN_DIGITS, BigComplex, BigReal,
                        PrecisionContext, const_e, const_pi, default_digits,
                        elementary, gamma, mk_context, real_from, wrap_complex,
                        wrap_real)
from .poincare import PoincareRegime, PoincareResult, leading_order
from .saddle import (PhaseParams, SaddleKind, SaddlePair,
                     coalescence_tolerance, lambert_w0, lambert_wm1, psi,
                     psi_derivs, solve_saddles)
from .stirling import (N_MAX_LIMIT, ExactValue, StirlingTriangle, bell_number,
                       build_triangle, scaled_touchard, touchard_exact,
                       touchard_recurrence)
from .uniform import (UniformIngredients, branch_continuity_check,
                      coalescence_limit_values, compute_A0_B0,
                      compute_zeta_beta, theorem2_eval, uniform_ingredients)

__version__ = "0.1.0"

__all__ = [
    "ABS_Z_LIMIT", "AiryMethod", "AiryValue", "airy", "switchover",
    "DEFAULT_ORDER", "BmTable", "ForwardSeries", "RationalSeries",
    "compute_bm", "default_bm", "forward_series", "revert_series",
    "theorem1_eval",
    "ContourPolyline", "ContourSet", "contour_set",
    "BranchError", "CapacityError", "DomainError", "InternalConsistencyError",
    "InvalidPrecisionError", "OrderError", "PrecisionExhaustedError",
    "RegimeError", "SeriesConsistencyError", "SolverError", "StepError",
    "TouchardError",
    "DEFAULT_DIGITS", "MIN_DIGITS", "BigComplex", "BigReal",
    "PrecisionContext", "const_e", "const_pi", "default_digits", "elementary",
    "gamma", "mk_context", "real_from", "wrap_complex", "wrap_real",
    "PoincareRegime", "PoincareResult", "leading_order",
    "PhaseParams", "SaddleKind", "SaddlePair", "coalescence_tolerance",
    "lambert_w0", "lambert_wm1", "psi", "psi_derivs", "solve_saddles",
    "N_MAX_LIMIT", "ExactValue", "StirlingTriangle", "bell_number",
    "build_triangle", "scaled_touchard", "touchard_exact",
    "touchard_recurrence",
    "UniformIngredients", "branch_continuity_check",
    "coalescence_limit_values", "compute_A0_B0", "compute_zeta_beta",
    "theorem2_eval", "uniform_ingredients",
    "__version__",
]
