"""Periodic solutions of second-order nonlinear difference equations.

The package computes N-periodic solutions of

    y(t+2) + b*y(t+1) + c*y(t) = g(t, y(t)),    c != 0,

by reducing the periodic boundary-value problem to kernel coordinates of
its linear part (a Lyapunov-Schmidt splitting), classifies the resonance
structure, machine-checks the hypotheses of the underlying existence
theorems, and cross-validates every solution against an independent
brute-force cyclic Newton solver.
"""

__version__ = "0.1.0"

from .expr import DomainError, ExprError, evaluate, parse, to_text
from .hypotheses import (
    CheckReport,
    check_corollary,
    check_thm1,
    check_thm2,
    membership_U,
)
from .linear import (
    LinearData,
    NotInImageError,
    Problem,
    ResonanceClass,
    apply_L,
    build_linear_data,
    classify,
    companion_matrix,
    image_test,
    mp_solve,
    norm_bound_mp_iq,
    proj_P,
    proj_Q,
    sup_norm,
)
from .mat2 import mat2_pow, pinv2, rank2, svals2
from .oracle import check_solution, multistart_search, newton_solve, residual
from .reduction import (
    BifurcationMap,
    BoundaryZeroError,
    ConvergenceError,
    NoSignChangeError,
    SolveReport,
    SolverError,
    apply_F,
    aux_solve,
    bifurcation_value,
    solve,
    solve_1d,
    solve_2d,
    solve_nonresonant,
    winding_number,
    winding_of_map,
)

__all__ = [
    "__version__",
    "BifurcationMap", "BoundaryZeroError", "CheckReport", "ConvergenceError",
    "DomainError", "ExprError", "LinearData", "NoSignChangeError",
    "NotInImageError", "Problem", "ResonanceClass", "SolveReport",
    "SolverError", "apply_F", "apply_L", "aux_solve", "bifurcation_value",
    "build_linear_data", "check_corollary", "check_solution", "check_thm1",
    "check_thm2", "classify", "companion_matrix", "evaluate", "image_test",
    "mat2_pow", "membership_U", "mp_solve", "multistart_search",
    "newton_solve", "norm_bound_mp_iq", "parse", "pinv2", "proj_P", "proj_Q",
    "rank2", "residual", "solve", "solve_1d", "solve_2d", "solve_nonresonant",
    "sup_norm", "svals2", "to_text", "winding_number", "winding_of_map",
]
