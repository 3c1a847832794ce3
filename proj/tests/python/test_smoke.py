"""Smoke tests for the python bindings: mesh construction, a small solver run
and the headline invariants."""

import math

import numpy as np
import pytest

import robinssn


def test_mesh_counts_and_weights():
    mesh = robinssn.build_unit_cube_mesh(2)
    assert mesh.num_vertices == 27
    assert mesh.num_tets == 48
    assert mesh.num_boundary_nodes == 26
    assert mesh.level == 2

    weights = robinssn.boundary_area_weights(mesh)
    assert weights.shape == (26,)
    assert math.isclose(weights.sum(), 6.0, rel_tol=1e-12)

    vertices = mesh.vertices
    assert vertices.shape == (27, 3)
    assert vertices.min() == 0.0 and vertices.max() == 1.0


def test_mesh_rejects_level_zero():
    with pytest.raises(ValueError):
        robinssn.build_unit_cube_mesh(0)


def test_state_solve_and_objective():
    mesh = robinssn.build_unit_cube_mesh(2)
    problem = robinssn.paper_example()
    assert problem.nu == 0.01 and problem.alpha == 0.0 and problem.beta == 1.0

    u0 = np.zeros(mesh.num_boundary_nodes)
    y, newton_iterations, residual = robinssn.solve_state(problem, mesh, u0)
    assert y.shape == (mesh.num_vertices,)
    assert newton_iterations >= 1
    assert residual <= 1e-12

    J = robinssn.objective_value(problem, mesh, u0, y)
    assert np.isfinite(J) and J > 0.0


def test_ssn_solve_converges_on_the_benchmark():
    mesh = robinssn.build_unit_cube_mesh(4)
    problem = robinssn.paper_example()
    result = robinssn.ssn_solve(problem, mesh, np.zeros(mesh.num_boundary_nodes))
    assert result["converged"]
    history = result["history"]
    assert len(history) >= 3
    assert history[-1]["delta"] is None
    assert history[-1]["F_inf"] <= 1e-10

    u = result["u"]
    assert u.min() >= problem.alpha - 1e-15
    assert u.max() <= problem.beta + 1e-15

    deltas = [row["delta"] for row in history if row["delta"] is not None]
    assert deltas[-1] <= 1e-12


def test_optimality_report():
    mesh = robinssn.build_unit_cube_mesh(2)
    problem = robinssn.paper_example()
    result = robinssn.ssn_solve(problem, mesh, np.zeros(mesh.num_boundary_nodes))
    report = robinssn.optimality_report(problem, mesh, result["u"])
    assert report["F_inf"] <= 1e-9
    assert report["biactive_measure"] >= 0.0
