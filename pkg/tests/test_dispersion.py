import math

import numpy as np
import pytest

from curvelast import dispersion as disp
from curvelast.base_state import BaseState, NoBracket
from curvelast.bulk_material import BulkMaterial
from curvelast.surface_material import SurfaceModel

MAT = BulkMaterial(1.0, 10.0)
SURF = SurfaceModel.helfrich(6.5, 0.0)


def test_characteristic_roots_solve_polynomial():
    q1sq, q2sq = disp.characteristic_roots(0.9, 1.2, MAT)
    assert q1sq == pytest.approx((1.2 / 0.9) ** 2)
    assert q2sq == pytest.approx(1.054621499022015, rel=1e-14)
    for q in (q1sq, q2sq):
        assert abs(disp.characteristic_polynomial(q, 0.9, 1.2, MAT)) < 1e-10


def test_degenerate_roots_raise():
    with pytest.raises(disp.DegenerateRoots):
        disp.characteristic_roots(1.0, 1.0, MAT)
    base = BaseState.solve(1.0, MAT, SurfaceModel.tension(0.0))
    with pytest.raises(disp.DegenerateRoots):
        disp.boundary_matrix(0.5, base)


def test_q2_probe_prefers_square():
    probe = disp.q2_probe(0.9, 1.2, MAT)
    assert probe["verdict"] == "q2^2"
    assert abs(probe["residual_if_q2sq"]) < 1e-12


def test_frozen_omega():
    assert disp.dispersion_det(0.5, 1.2, MAT, SURF) == pytest.approx(-0.04412842475725341, rel=1e-9)


def test_omega_is_real_and_modes_valid():
    prob = disp.dispersion_problem(0.8, BaseState.solve(1.3, MAT, SURF))
    assert prob.imag_ratio < 1e-12
    assert prob.mode_residual < 1e-8
    assert not prob.degenerate


def test_boundary_matrix_multilinear():
    base = BaseState.solve(1.3, MAT, SURF)
    m1 = disp.boundary_matrix(0.8, base)
    m2 = disp.boundary_matrix(0.8, base, column_scales=(2.0, 2.0))
    m3 = disp.boundary_matrix(0.8, base, column_scales=(3.0, 1.0))
    d1 = np.linalg.det(m1)
    assert np.linalg.det(m2) == pytest.approx(4 * d1, rel=1e-12)
    assert np.linalg.det(m3) == pytest.approx(3 * d1, rel=1e-12)


def test_generic_and_helfrich_paths_agree():
    surf = SurfaceModel.helfrich(1.0, 2.0, -1.45)
    base = BaseState.solve(0.9, BulkMaterial(1.0, 4.0), surf)
    x = disp.boundary_matrix(1.7, base, "generic")
    y = disp.boundary_matrix(1.7, base, "helfrich")
    assert np.abs(x - y).max() <= 1e-11 * np.abs(y).max()


def test_omega_continuous_through_degeneracy():
    mat, surf = BulkMaterial(1.0, 3.0), SurfaceModel.tension(0.5)
    # lambda = a where the tension-free state is unstretched; find it on the branch
    lam_star = 1.0
    for _ in range(50):
        a = BaseState.solve(lam_star, mat, surf).a
        lam_star = a
    probs = [disp.dispersion_problem(1.0, BaseState.solve(lam_star + d, mat, surf)) for d in (-1e-5, 0.0, 1e-5)]
    assert [p.degenerate for p in probs] == [False, True, False]
    vals = [p.omega for p in probs]
    assert abs(vals[1] - 0.5 * (vals[0] + vals[2])) < 1e-8 * abs(vals[1])


def test_incompressible_verbatim_and_reduced():
    k, lam = 1.0, 1.3
    full = disp.dispersion_det_incompressible(k, lam, 0.5, 2.0, -1.45)
    red = disp.dispersion_det_incompressible_reduced(k, lam, 0.5, 2.0, -1.45)
    assert full == pytest.approx(61.67168923748223, rel=1e-13)
    assert full == pytest.approx((lam ** 3 - 1) * red, rel=1e-13)
    assert disp.dispersion_det_incompressible(k, 1.0, 3.0, 1.0) == pytest.approx(0.0, abs=1e-12)


def test_reduced_form_smooth_at_unit_stretch():
    f = lambda t: disp.dispersion_det_incompressible_reduced(1.0, t, 0.5, 2.0, -1.45)
    assert f(1.0) == pytest.approx(33.09548672746271, rel=1e-12)
    for h in (1e-3, 5e-4):
        assert f(1.0) == pytest.approx(0.5 * (f(1 + h) + f(1 - h)), rel=1e-5)


def test_compressible_tends_to_closed_form():
    mat = BulkMaterial(1.0, disp.INCOMPRESSIBLE_PROXY)
    for k, lam in ((0.4, 0.8), (1.5, 1.4)):
        om = disp.dispersion_det(k, lam, mat, SurfaceModel.helfrich(0.5, 2.0, -1.45))
        ref = disp.dispersion_det_incompressible_reduced(k, lam, 0.5, 2.0, -1.45) * disp.incompressible_scale(k, lam)
        assert om == pytest.approx(ref, rel=1e-5)


def test_critical_stretch_root_rules():
    s = SurfaceModel.helfrich(6.5, 0.0)
    top = disp.critical_stretch(0.1, None, s, lam_bracket=(0.5, 2.5), incompressible=True)
    low = disp.critical_stretch(0.1, None, s, lam_bracket=(0.5, 2.5), incompressible=True, seed=0.9)
    assert top.lambda_crit > 1.5 > low.lambda_crit
    assert top.a == pytest.approx(top.lambda_crit ** -0.5)
    for p in (top, low):
        assert abs(disp.dispersion_det_incompressible_reduced(0.1, p.lambda_crit, 6.5, 0.0)) < 1e-10


def test_critical_stretch_no_root():
    with pytest.raises(NoBracket):
        disp.critical_stretch(1.0, MAT, SurfaceModel.tension(0.0), lam_bracket=(0.6, 0.9))


def test_bifurcation_curve_statuses():
    curve = disp.bifurcation_curve([0.1, 0.2, 3.0], MAT, SURF, lam_bracket=(0.5, 1.5))
    assert [p.status for p in curve] == ["ok", "ok", "no_root"]
    assert math.isnan(curve[2].lambda_crit)
    assert curve[0].omega_residual < 1e-10 * curve[0].omega_scale
    assert max(p.max_mode_residual for p in curve[:2]) < 1e-8
    with pytest.raises(ValueError):
        disp.bifurcation_curve([0.2, 0.1], MAT, SURF)


@pytest.mark.parametrize("k", [0.0, -1.0])
def test_k_must_be_positive(k):
    with pytest.raises(ValueError):
        disp.dispersion_det_incompressible(k, 1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        disp.critical_stretch(k, MAT, SURF)
