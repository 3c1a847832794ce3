"""Semismooth Newton solver for control problems where the control acts as a
Robin heat-transfer coefficient on the boundary of a semilinear elliptic PDE.
"""

from robinssn._core import (
    Mesh,
    ProblemSpec,
    SsnConfig,
    boundary_area_weights,
    build_unit_cube_mesh,
    manufactured_linear_profile,
    manufactured_quadratic_profile,
    objective_value,
    optimality_report,
    paper_example,
    run_experiment_json,
    solve_state,
    ssn_solve,
)

__all__ = [
    "Mesh",
    "ProblemSpec",
    "SsnConfig",
    "boundary_area_weights",
    "build_unit_cube_mesh",
    "manufactured_linear_profile",
    "manufactured_quadratic_profile",
    "objective_value",
    "optimality_report",
    "paper_example",
    "run_experiment_json",
    "solve_state",
    "ssn_solve",
]
