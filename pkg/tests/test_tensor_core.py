import numpy as np
import pytest

from curvelast import jets
from curvelast.tensor_core import Tensor4Block, diag3, double_contract, dyad, surface_project


def test_double_contract_matches_einsum(rng):
    t4 = rng.normal(size=(3, 3, 3, 3))
    t2 = rng.normal(size=(3, 3))
    assert np.allclose(double_contract(t4, t2), np.einsum("ijkl,kl->ij", t4, t2))


def test_surface_projection_drops_radial_row_and_column(rng):
    t = rng.normal(size=(3, 3))
    p = surface_project(t)
    assert np.all(p[2, :] == 0) and np.all(p[:, 2] == 0)
    assert np.array_equal(p[:2, :2], t[:2, :2])


def test_dyad_and_diag():
    d = dyad(0, 2)
    assert d[0, 2] == 1.0 and d.sum() == 1.0
    assert np.array_equal(diag3(1, 2, 3), np.diag([1.0, 2.0, 3.0]))


def test_mask_violations_are_one_based():
    comp = np.zeros((3, 3, 3, 3))
    comp[0, 1, 2, 0] = 1.0
    block = Tensor4Block(comp, mask=np.zeros((3, 3, 3, 3), dtype=bool))
    assert block.violations() == [(1, 2, 3, 1)]
    assert Tensor4Block(comp).violations() == []


def test_block_shape_checked():
    with pytest.raises(ValueError):
        Tensor4Block(np.zeros((2, 2, 2, 2)))


def test_jets_dz_and_mode_evaluation():
    form = 2.0 * jets.symbol("u", 1) + jets.symbol("v_r")
    d = jets.dz(form)
    assert jets.describe(d) == {"u_zz": 2.0, "v_r_z": 1.0}
    ik = 0.7j
    val = jets.evaluate_mode(d, ik, f=1.5, fp=0.0, g=0.0, gp=-2.0)
    assert val == pytest.approx(2.0 * ik ** 2 * 1.5 + ik * -2.0)


def test_jets_order_overflow():
    with pytest.raises(ValueError):
        jets.dz(jets.symbol("u", jets.MAX_ORDER))
