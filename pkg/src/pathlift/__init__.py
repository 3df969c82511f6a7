"""Certified polynomial factorization by path lifting.

Roots are found in stages: each stage lifts rays from four quadrants of
the target space back to roots, certifies the endpoints with Smale's alpha
test, polishes and de-duplicates them, and divides them out by
interpolation at roots of unity.
"""
__version__ = "0.1.0"

from .certify import AlphaReport, alpha, contraction_B, same_root
from .complexpoly import (NormalizedInput, as_poly, derivative, evaluate,
                          evaluate_many, expand_factors, factor_to_root_precision,
                          max_norm, normalize_to_pd1, rescale_main, residual_norm,
                          root_radius_bound, taylor_coeffs_at)
from .errors import (DerivativeVanishes, EvaluationOverflow, InsufficientCrossings,
                     NoConvergence, NodeCollision, PathliftError, TauUnderflow,
                     TheoremViolation)
from .kernels import active_backend, use_backend
from .lifter import (Factorization, SolveConfig, StageResult, StageStats, WedgeBatch,
                     choose_initial_points, half_roots_and_deflate, iterate_plm,
                     polish, select_approx_zeros, solve, trace_plm, weed)
from .oracle import OracleResult, match_multisets, oracle_roots
from .spectral import DeflationResult, deflate, dft, idft

__all__ = [
    "AlphaReport", "alpha", "contraction_B", "same_root",
    "NormalizedInput", "as_poly", "derivative", "evaluate", "evaluate_many",
    "expand_factors", "factor_to_root_precision", "max_norm", "normalize_to_pd1",
    "rescale_main", "residual_norm", "root_radius_bound", "taylor_coeffs_at",
    "DerivativeVanishes", "EvaluationOverflow", "InsufficientCrossings", "NoConvergence",
    "NodeCollision", "PathliftError", "TauUnderflow", "TheoremViolation",
    "active_backend", "use_backend",
    "Factorization", "SolveConfig", "StageResult", "StageStats", "WedgeBatch",
    "choose_initial_points", "half_roots_and_deflate", "iterate_plm", "polish",
    "select_approx_zeros", "solve", "trace_plm", "weed",
    "OracleResult", "match_multisets", "oracle_roots",
    "DeflationResult", "deflate", "dft", "idft",
]
