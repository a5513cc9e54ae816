"""Python layer over the equivariant magnetic Choquard toolkit.

Exposes the parameter-validation and radial limit-problem API; the full
lattice solver stays behind the C++ CLI.
"""

from ._choquard import (
    DecayFit,
    ExponentSet,
    Interval,
    ProblemParams,
    RadialMesh,
    RadialProfile,
    RadialSolveConfig,
    SymmetrySpec,
    ValidationReport,
    choose_mu,
    chi_cutoff,
    cutoff_radius,
    decay_fit,
    delta_tau,
    eps_window_max,
    lambda_set,
    solve_ground_state,
    validate,
)

__all__ = [
    "DecayFit",
    "ExponentSet",
    "Interval",
    "ProblemParams",
    "RadialMesh",
    "RadialProfile",
    "RadialSolveConfig",
    "SymmetrySpec",
    "ValidationReport",
    "choose_mu",
    "chi_cutoff",
    "cutoff_radius",
    "decay_fit",
    "delta_tau",
    "eps_window_max",
    "lambda_set",
    "solve_ground_state",
    "validate",
]
