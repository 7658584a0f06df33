from ._ramsa import (
    Box,
    FeasibilityReport,
    Problem,
    RamsaError,
    SolverResult,
    TrialReport,
    TuneReport,
    builtin_problem,
    list_problems,
    mc_cvar,
    mc_feasibility,
    mc_var,
    output_transform,
    scale_to_box,
    solve,
    sora_reference_point,
    trial,
    tune,
    unit_coordinates,
    worst_case_epistemic,
)

__all__ = [
    "Box",
    "FeasibilityReport",
    "Problem",
    "RamsaError",
    "SolverResult",
    "TrialReport",
    "TuneReport",
    "builtin_problem",
    "list_problems",
    "mc_cvar",
    "mc_feasibility",
    "mc_var",
    "output_transform",
    "scale_to_box",
    "solve",
    "sora_reference_point",
    "trial",
    "tune",
    "unit_coordinates",
    "worst_case_epistemic",
]
