import math

import pytest

from curvelast.base_state import (BaseState, NoBracket, axial_force, base_residual, base_residual_generic,
                                  dFz_dlambda, limiting_point, solve_azimuthal_stretch)
from curvelast.bulk_material import BulkMaterial, StretchDomainError
from curvelast.surface_material import SurfaceModel


def test_golden_ratio_root():
    a = solve_azimuthal_stretch(1.0, BulkMaterial(1.0, 0.0), SurfaceModel.tension(1.0))
    assert abs(a - (math.sqrt(5.0) - 1.0) / 2.0) < 1e-12


@pytest.mark.parametrize("lam", [0.5, 1.0, 1.5, 3.0])
def test_incompressible_limit(lam):
    a = solve_azimuthal_stretch(lam, BulkMaterial(1.0, 1e8), SurfaceModel.helfrich(2.0, 1.0, -1.0))
    assert abs(a - lam ** -0.5) < 1e-4


def test_frozen_base_state():
    base = BaseState.solve(1.2, BulkMaterial(1.0, 10.0), SurfaceModel.helfrich(6.5, 0.0))
    assert base.a == pytest.approx(0.6017626196445183, rel=1e-12)
    assert base.axial_force == pytest.approx(15.110092484668897, rel=1e-12)
    assert abs(base.residual) < 1e-10
    assert base.current_radius == base.a


def test_axial_force_closed_forms():
    bare = SurfaceModel.tension(0.0)
    mat = BulkMaterial(1.0, 0.0)
    # neo-Hookean with D = 0: F = pi (lambda - 1/lambda), independent of a
    assert axial_force(2.0, 0.8, mat, bare) == pytest.approx(1.5 * math.pi, rel=1e-14)
    assert dFz_dlambda(1.0, mat, bare) == pytest.approx(2 * math.pi, rel=1e-8)
    # tension only at lambda = 1: bulk term vanishes, surface gives 2 pi gamma a
    a = solve_azimuthal_stretch(1.0, mat, SurfaceModel.tension(1.0))
    assert axial_force(1.0, a, mat, SurfaceModel.tension(1.0)) == pytest.approx(2 * math.pi * a, rel=1e-13)


def test_helfrich_closed_form_matches_generic(rng):
    for _ in range(10):
        a, lam, radius = rng.uniform(0.5, 2.0, 3)
        mat = BulkMaterial(rng.uniform(0.5, 2.0), rng.uniform(0, 20))
        surf = SurfaceModel.helfrich(rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(-2, 2))
        x = base_residual(a, lam, mat, surf, radius)
        y = base_residual_generic(a, lam, mat, surf, radius)
        assert x == pytest.approx(y, rel=1e-12, abs=1e-12)


def test_radius_enters_through_surface_terms():
    mat = BulkMaterial(1.0, 3.0)
    surf = SurfaceModel.helfrich(1.0, 0.5, -1.0)
    assert solve_azimuthal_stretch(1.1, mat, surf, 1.0) != pytest.approx(solve_azimuthal_stretch(1.1, mat, surf, 2.0))


def test_explicit_bracket_failure():
    with pytest.raises(NoBracket) as info:
        solve_azimuthal_stretch(1.0, BulkMaterial(1.0, 1.0), SurfaceModel.tension(0.0), bracket=(2.0, 3.0))
    assert info.value.lo == 2.0 and info.value.f_lo * info.value.f_hi > 0


def test_bad_stretch():
    with pytest.raises(StretchDomainError):
        solve_azimuthal_stretch(-1.0, BulkMaterial(1.0, 1.0), SurfaceModel.tension(0.0))


def test_limiting_point_frozen():
    lam = limiting_point(BulkMaterial(1.0, 10.0), SurfaceModel.helfrich(6.5, 0.0), (0.6, 0.7))
    assert lam == pytest.approx(0.63159, abs=1e-4)
    with pytest.raises(NoBracket):
        limiting_point(BulkMaterial(1.0, 10.0), SurfaceModel.tension(0.0), (0.8, 1.2))
