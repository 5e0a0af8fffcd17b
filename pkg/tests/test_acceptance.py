"""Acceptance criteria 1-9 at their stated tolerances.

Each test records a PASS/FAIL line, printed in the pytest terminal summary and
when this file is run as a script.
"""

import math
import time

import numpy as np
import pytest
from scipy import special
from scipy.optimize import brentq, minimize_scalar

from curvelast import dispersion as disp
from curvelast.base_state import NoBracket, limiting_point, solve_azimuthal_stretch
from curvelast.bulk_material import BulkMaterial, chi_from_moduli, incremental_bulk_coeffs
from curvelast.surface_material import (PolynomialInvariantEnergy, SurfaceModel, fd_surface_moduli_oracle,
                                        helfrich_chis_table, incremental_surface_coeffs,
                                        invariant_derivatives, principal_invariants,
                                        surface_moduli_aligned, surface_moduli_invariant)
from curvelast.verification import K0_CASES, SHIPPED_MODELS, compare_moduli, random_aligned_state

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = {}

# worst mode residual over every compressible Omega evaluation in criteria 2-5
MODE_LOG: dict = {}


def record(number: int, passed: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def log_modes(tag: str, points) -> None:
    for p in points:
        if p.status == "ok":
            MODE_LOG[tag] = max(MODE_LOG.get(tag, 0.0), p.max_mode_residual)


def lambda_crit(k, mat, surf, bracket, incompressible=False, tag=None) -> float:
    """Upper boundary of the unstable region; -inf when Omega has no root (stable)."""
    try:
        point = disp.critical_stretch(k, mat, surf, 1.0, bracket, incompressible=incompressible)
    except NoBracket:
        return -math.inf
    if tag:
        log_modes(tag, [point])
    return point.lambda_crit


def interior_maximum(mat, surf, bracket, k_bounds, incompressible=False, tag=None) -> tuple:
    # stable points (-inf) are floored at 0 so the optimizer sees finite values
    res = minimize_scalar(lambda k: -max(lambda_crit(k, mat, surf, bracket, incompressible, tag), 0.0),
                          bounds=k_bounds, method="bounded", options={"xatol": 1e-4})
    k_star = float(res.x)
    values = [lambda_crit(k, mat, surf, bracket, incompressible, tag) for k in (k_star, k_star / 4, 4 * k_star)]
    return k_star, values


# ---------------------------------------------------------------- criterion 1

def closed_form_oracle(k, lam, gamma, beta, h0):
    """Independent transcription using scipy Bessel ratios."""
    r1 = special.ive(0, k * lam) / special.ive(1, k * lam)
    r2 = special.ive(0, k / math.sqrt(lam)) / special.ive(1, k / math.sqrt(lam))
    sl = math.sqrt(lam)
    return (-16 * sl * (lam ** 3 - 1 + 2 * k * lam * r1) + 8 * k * (lam ** 3 + 1) ** 2 * r2
            + 8 * gamma * lam * (lam ** 3 - 1) * (k * k - lam)
            + beta * lam * (lam ** 3 - 1) * (4 * h0 * h0 * (k * k - lam) + 8 * h0 * k * k * sl
                                             + 2 * k ** 4 + 3 * lam * lam - k * k * lam))


def test_criterion_1_incompressible_closed_form():
    t0 = time.perf_counter()
    rng = np.random.default_rng(1)
    worst_formula = 0.0
    for _ in range(50):
        k, lam = rng.uniform(0.01, 5.0), rng.uniform(0.2, 3.0)
        g, b, h = rng.uniform(0, 10), rng.uniform(0, 5), rng.uniform(-3, 3)
        ref = closed_form_oracle(k, lam, g, b, h)
        got = disp.dispersion_det_incompressible(k, lam, g, b, h)
        worst_formula = max(worst_formula, abs(got - ref) / max(abs(ref), 1e-300))
    worst_limit = 0.0
    for lam in (0.5, 0.8, 1.3, 2.0, 3.0):
        limit = 16 * math.sqrt(lam) * (lam ** 3 - 1) * (lam ** 3 + 2)
        worst_limit = max(worst_limit, abs(disp.dispersion_det_incompressible(1e-4, lam, 0, 0) - limit) / abs(limit))
    worst_root = 0.0
    for lam0 in (0.8, 1.0, 1.4):
        g_star = 2 * (lam0 ** 3 + 2) / lam0 ** 1.5
        root = brentq(lambda t: disp.dispersion_det_incompressible_reduced(1e-4, t, g_star, 0.0),
                      lam0 - 0.05, lam0 + 0.05, xtol=1e-14)
        worst_root = max(worst_root, abs(root - lam0))
    elapsed = time.perf_counter() - t0
    passed = worst_formula < 1e-12 and worst_limit < 1e-6 and worst_root < 1e-5 and elapsed < 1.0
    record(1, passed, f"formula {worst_formula:.1e}, k->0 limit {worst_limit:.1e} (tol 1e-6), "
                      f"gamma* root {worst_root:.1e} (tol 1e-5), gamma*(1) = 6, {elapsed:.2f} s")
    assert passed


# ---------------------------------------------------------------- criterion 2

# k-values lie where each curve has a root (the unstable region does not span the whole band)
C2_SETS = (
    ((6.5, 0.0, 0.0), np.linspace(0.06, 0.33, 10), (0.5, 1.5)),
    ((0.5, 2.0, -1.45), np.linspace(0.6, 2.0, 10), (0.008, 0.2)),
)


def test_criterion_2_compressible_vs_incompressible():
    t0 = time.perf_counter()
    mat = BulkMaterial(1.0, disp.INCOMPRESSIBLE_PROXY)
    worst = 0.0
    count = 0
    for (g, b, h), ks, bracket in C2_SETS:
        surf = SurfaceModel.helfrich(g, b, h)
        comp = disp.bifurcation_curve(ks, mat, surf, 1.0, bracket)
        inc = disp.bifurcation_curve(ks, None, surf, 1.0, bracket, incompressible=True)
        log_modes("criterion 2", comp)
        for p, q in zip(comp, inc):
            assert p.status == q.status == "ok", (p, q)
            worst = max(worst, abs(p.lambda_crit - q.lambda_crit))
            count += 1
    elapsed = time.perf_counter() - t0
    passed = worst < 1e-3 and count == 20 and elapsed < 30.0
    record(2, passed, f"max |lambda_D=1e8 - lambda_closed| = {worst:.1e} over {count} k-values "
                      f"(tol 1e-3), {elapsed:.1f} s")
    assert passed


# ---------------------------------------------------------------- criterion 3

def test_criterion_3_interior_maximum_h0():
    surf = SurfaceModel.helfrich(0.5, 0.03, -1.45)
    bracket = (0.02, 3.0)
    k_star, (top, quarter, quad) = interior_maximum(None, surf, bracket, (1.0, 8.0), incompressible=True)
    # the same three points on the compressible path at D = 1e8
    mat = BulkMaterial(1.0, disp.INCOMPRESSIBLE_PROXY)
    comp = [lambda_crit(k, mat, surf, bracket, tag="criterion 3") for k in (k_star, k_star / 4, 4 * k_star)]
    passed = (top > quarter and top > quad and comp[0] > comp[1] and comp[0] > comp[2]
              and abs(comp[0] - top) < 1e-3)
    record(3, passed, f"gamma=0.5 beta_s=0.03 H0=-1.45: k*={k_star:.3f} lambda*={top:.4f} > "
                      f"lambda(k*/4)={quarter:.4f}, lambda(4k*)={quad:.4f}; D=1e8 lambda*={comp[0]:.4f}")
    assert passed


# ---------------------------------------------------------------- criterion 4

def test_criterion_4_interior_maximum_stretch_and_bending():
    mat = BulkMaterial.from_poisson(1.0, 0.49)
    surf = SurfaceModel.stretch(10.0, 5.0)
    k1, (s_top, s_quarter, s_quad) = interior_maximum(mat, surf, (1.5, 4.0), (0.05, 0.5), tag="criterion 4")
    stretch_ok = s_top > s_quarter and s_top > s_quad > -math.inf

    mat_b = BulkMaterial.from_poisson(1.0, 0.4)
    surf_b = SurfaceModel.helfrich(4.0, 2.0, -2.0)
    bracket_b = (0.05, 6.0)
    k2, (b_top, b_quarter, b_quad) = interior_maximum(mat_b, surf_b, bracket_b, (0.5, 3.0), tag="criterion 4")
    # At 4k* the unstable region has closed: Omega > 0 for every stretch scanned, so no
    # bifurcation exists there and lambda_crit(4k*) is taken as -inf.
    scan = [disp.dispersion_det(4 * k2, t, mat_b, surf_b) for t in np.geomspace(*bracket_b, 129)]
    stable_at_quad = b_quad == -math.inf and min(scan) > 0.0
    bending_ok = b_top > b_quarter and b_top > b_quad and stable_at_quad
    passed = stretch_ok and bending_ok
    record(4, passed, f"stretch nu=0.49 gamma=10 alpha_s=5: k*={k1:.3f} lambda*={s_top:.4f} > "
                      f"{s_quarter:.4f}, {s_quad:.4f}; bending nu=0.4 gamma=4 beta_s=2 H0=-2: "
                      f"k*={k2:.3f} lambda*={b_top:.4f} > {b_quarter:.4f}, 4k* stable (min Omega {min(scan):.1e} > 0)")
    assert passed


# ---------------------------------------------------------------- criterion 5

def test_criterion_5_limiting_point():
    worst = 0.0
    parts = []
    for mat, surf, bracket in K0_CASES:
        point = disp.critical_stretch(1e-4, mat, surf, 1.0, bracket)
        log_modes("criterion 5", [point])
        lam_force = limiting_point(mat, surf, (0.97 * point.lambda_crit, 1.03 * point.lambda_crit))
        err = abs(point.lambda_crit - lam_force)
        worst = max(worst, err)
        parts.append(f"{surf.kind.value}:{point.lambda_crit:.5f}")
    passed = worst < 1e-4 and len(parts) == 5
    record(5, passed, f"max |lambda_Omega - lambda_dF| = {worst:.1e} (tol 1e-4) over {', '.join(parts)}")
    assert passed


# ---------------------------------------------------------------- criterion 6

def test_criterion_6_moduli():
    rng = np.random.default_rng(6)
    fd_worst, fd_bad = 0.0, []
    inv_worst, inv_bad = 0.0, []
    for label, model in SHIPPED_MODELS.items():
        for i in range(50):
            s = random_aligned_state(rng, equal_stretch=(i % 10 == 0))
            aligned = surface_moduli_aligned(model, s)
            w, bad = compare_moduli(aligned, fd_surface_moduli_oracle(model, s), 1e-6, 1e-9)
            fd_worst = max(fd_worst, w)
            fd_bad += [f"{label}: {b}" for b in bad]
            d, dd = invariant_derivatives(model, principal_invariants(s.x))
            w, bad = compare_moduli(surface_moduli_invariant(d, dd, s), aligned, 1e-10, 1e-12)
            inv_worst = max(inv_worst, w)
            inv_bad += [f"{label}: {b}" for b in bad]
    for _ in range(20):
        c2 = rng.normal(size=(6, 6))
        energy = PolynomialInvariantEnergy(rng.normal(size=6), c2 + c2.T)
        s = random_aligned_state(rng)
        d, dd = energy.invariant(principal_invariants(s.x))
        _, bad = compare_moduli(surface_moduli_invariant(d, dd, s), fd_surface_moduli_oracle(energy.as_model(), s),
                                1e-6, 1e-8)
        fd_bad += [f"polynomial: {b}" for b in bad]
    bulk_worst = 0.0
    for _ in range(100):
        a, lam = rng.uniform(0.3, 3.0, 2)
        mat = BulkMaterial(rng.uniform(0.1, 5.0), rng.uniform(0.0, 100.0))
        eta = np.zeros((3, 3))
        for idx in ((0, 0), (1, 1), (1, 2), (2, 1), (2, 2)):
            eta[idx] = rng.normal()
        x = incremental_bulk_coeffs(a, lam, mat).chi(eta)
        y = chi_from_moduli(a, lam, mat, eta)
        bulk_worst = max(bulk_worst, np.abs(x - y).max() / np.abs(y).max())
    passed = not fd_bad and not inv_bad and bulk_worst <= 1e-12
    record(6, passed, f"aligned vs FD {fd_worst:.1e} (tol 1e-6), invariant vs aligned {inv_worst:.1e} "
                      f"(tol 1e-10), bulk two-path {bulk_worst:.1e} (tol 1e-12)")
    assert passed, (fd_bad[:10], inv_bad[:10])


# ---------------------------------------------------------------- criterion 7

def test_criterion_7_chis_two_path():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(50):
        a, lam, radius = rng.uniform(0.3, 3.0, 3)
        model = SurfaceModel.helfrich(rng.uniform(0, 10), rng.uniform(0, 5), rng.uniform(-3, 3))
        x = incremental_surface_coeffs(model, a, lam, radius).components
        y = helfrich_chis_table(model, a, lam, radius).components
        worst = max(worst, np.abs(x - y).max() / max(1.0, np.abs(y).max()))
    passed = worst <= 1e-12
    record(7, passed, f"generic vs Helfrich table {worst:.1e} over 50 base states (tol 1e-12)")
    assert passed


# ---------------------------------------------------------------- criterion 8

def test_criterion_8_base_state():
    worst_inc = 0.0
    for lam in np.linspace(0.3, 3.0, 10):
        for surf in (SurfaceModel.tension(0.0), SurfaceModel.helfrich(2.0, 1.0, -1.0), SurfaceModel.stretch(3.0, 2.0)):
            a = solve_azimuthal_stretch(lam, BulkMaterial(1.0, 1e8), surf)
            worst_inc = max(worst_inc, abs(a - lam ** -0.5))
    a = solve_azimuthal_stretch(1.0, BulkMaterial(1.0, 0.0), SurfaceModel.tension(1.0))
    err_q = abs(a - (math.sqrt(5.0) - 1.0) / 2.0)
    passed = worst_inc < 1e-4 and err_q < 1e-12
    record(8, passed, f"D=1e8 |a - lambda^-1/2| = {worst_inc:.1e} (tol 1e-4), golden root {err_q:.1e} (tol 1e-12)")
    assert passed


# ---------------------------------------------------------------- criterion 9

def test_criterion_9_mode_validity():
    needed = ("criterion 2", "criterion 3", "criterion 4", "criterion 5")
    missing = [t for t in needed if t not in MODE_LOG]
    if missing:
        pytest.skip(f"run criteria 2-5 first ({', '.join(missing)} missing)")
    worst = max(MODE_LOG.values())
    passed = worst < 1e-8
    record(9, passed, "max mode PDE residual at 5 radii " + ", ".join(
        f"{t}: {MODE_LOG[t]:.1e}" for t in needed) + " (tol 1e-8)")
    assert passed


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
