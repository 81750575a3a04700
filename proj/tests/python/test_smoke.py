import math

import numpy as np
import pytest

import dodsd


def test_mesh_counts():
    mesh = dodsd.unit_square_mesh(10)
    assert mesh.num_triangles == 200
    assert mesh.num_vertices == 121
    assert mesh.h == pytest.approx(math.sqrt(2) / 10)
    fine = dodsd.refine(mesh)
    assert fine.num_triangles == 800
    assert fine.h == pytest.approx(mesh.h / 2)
    assert fine.total_area() == pytest.approx(1.0)
    assert mesh.vertices().shape == (121, 2)
    assert mesh.triangles().shape == (200, 3)


def test_isotropic_m_bound():
    assert abs(dodsd.m_bound(20, eta=0.0) - 1.0) <= 1e-14
    assert abs(dodsd.m_bound(20, phase="linear") - 1.0) <= 1e-12


def test_solve_shapes_and_errors():
    mesh = dodsd.unit_square_mesh(4)
    out = dodsd.solve(2, mesh, n_dirs=8)
    assert out["converged"]
    assert out["coefficients"].shape == (8, 32, 3)
    assert np.all(np.isfinite(out["coefficients"]))
    err = out["errors"]
    assert err["eh"] == pytest.approx(math.sqrt(err["e1"] ** 2 + err["e2"] ** 2 + err["e3"] ** 2 + err["e4"] ** 2))


def test_decoupled_single_iteration():
    out = dodsd.solve(1, dodsd.unit_square_mesh(3), sigma_s=0.0)
    assert out["iterations"] == 1


def test_convergence_and_compare():
    table = dodsd.convergence_study(4, levels=2, n0=4)
    assert [r["level"] for r in table["rows"]] == [0, 1]
    assert len(table["rates"]) == 1
    cmp = dodsd.compare_methods(4, levels=2, n0=6)
    for a, b in zip(cmp["dodsd"]["rows"], cmp["dodg"]["rows"]):
        assert a["eh"] < b["eh"]


def test_errors_carry_codes():
    with pytest.raises(dodsd.DodsdError) as info:
        dodsd.solve(7, dodsd.unit_square_mesh(2))
    assert info.value.code == 2
    with pytest.raises(dodsd.DodsdError) as info:
        dodsd.solve(1, dodsd.unit_square_mesh(2), sigma_s=5.0, max_iter=2)
    assert info.value.code == 5
    with pytest.raises(dodsd.DodsdError):
        dodsd.solve(1, dodsd.unit_square_mesh(2), method="fem")
