"""Cross-path verification suites run by ``curvelast verify``.

Each suite returns a SuiteResult. Failures name the offending entry or point.
"""

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import dispersion as disp
from .base_state import BaseState, limiting_point, solve_azimuthal_stretch
from .bulk_material import BulkMaterial, chi_from_moduli, incremental_bulk_coeffs
from .surface_material import (PolynomialInvariantEnergy, SurfaceModel, SurfaceModuli,
                               SurfacePrincipalState, fd_surface_moduli_oracle, helfrich_chis_table,
                               incremental_surface_coeffs, invariant_derivatives,
                               principal_invariants, surface_moduli_aligned,
                               surface_moduli_invariant)

SHIPPED_MODELS = {
    "tension": SurfaceModel.tension(1.3),
    "stretch": SurfaceModel.stretch(0.7, 2.1),
    "helfrich": SurfaceModel.helfrich(0.9, 0.8, -0.6),
}


@dataclass
class SuiteResult:
    name: str
    passed: bool
    worst: float = 0.0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "worst": self.worst,
                "failures": self.failures[:20], "details": self.details}


def compare_moduli(got: SurfaceModuli, ref: SurfaceModuli, rtol: float, atol: float) -> tuple:
    """(worst relative error, list of mismatching entry names)."""
    worst = 0.0
    bad = []
    for name in "ABCD":
        x = got.blocks()[name].components
        y = ref.blocks()[name].components
        for idx in itertools.product(range(3), repeat=4):
            err = abs(x[idx] - y[idx])
            scale = max(abs(x[idx]), abs(y[idx]))
            if scale > atol:
                worst = max(worst, err / scale)
            if err > rtol * scale + atol:
                bad.append(f"{name}_s[{','.join(str(i + 1) for i in idx)}]")
    return worst, bad


def random_aligned_state(rng: np.random.Generator, equal_stretch: bool = False) -> SurfacePrincipalState:
    l1, l2 = rng.uniform(0.6, 1.6, 2)
    k1, k2 = rng.uniform(-1.0, 1.0, 2)
    if equal_stretch:
        l2 = l1
    return SurfacePrincipalState(l1, l2, k1, k2)


def suite_fd_moduli(n_states: int = 5, seed: int = 0,
                    moduli_hook: Optional[Callable] = None) -> SuiteResult:
    rng = np.random.default_rng(seed)
    res = SuiteResult("fd_moduli", True)
    for label, model in SHIPPED_MODELS.items():
        for i in range(n_states):
            s = random_aligned_state(rng, equal_stretch=(i == 0))
            got = surface_moduli_aligned(model, s)
            if moduli_hook is not None:
                got = moduli_hook(label, got)
            worst, bad = compare_moduli(got, fd_surface_moduli_oracle(model, s), 1e-6, 1e-9)
            res.worst = max(res.worst, worst)
            res.failures += [f"{label}: {b}" for b in bad]
    res.passed = not res.failures
    return res


def suite_invariant_moduli(n_states: int = 5, seed: int = 1) -> SuiteResult:
    rng = np.random.default_rng(seed)
    res = SuiteResult("invariant_moduli", True)
    for label, model in SHIPPED_MODELS.items():
        for _ in range(n_states):
            s = random_aligned_state(rng)
            d, dd = invariant_derivatives(model, principal_invariants(s.x))
            worst, bad = compare_moduli(surface_moduli_invariant(d, dd, s),
                                        surface_moduli_aligned(model, s), 1e-10, 1e-12)
            res.worst = max(res.worst, worst)
            res.failures += [f"{label}: {b}" for b in bad]
    for _ in range(n_states):
        c2 = rng.normal(size=(6, 6))
        energy = PolynomialInvariantEnergy(rng.normal(size=6), c2 + c2.T)
        s = random_aligned_state(rng)
        d, dd = energy.invariant(principal_invariants(s.x))
        worst, bad = compare_moduli(surface_moduli_invariant(d, dd, s),
                                    fd_surface_moduli_oracle(energy.as_model(), s), 1e-6, 1e-8)
        res.failures += [f"polynomial: {b}" for b in bad]
    res.passed = not res.failures
    return res


def suite_bulk_two_path(n: int = 20, seed: int = 2) -> SuiteResult:
    rng = np.random.default_rng(seed)
    res = SuiteResult("bulk_two_path", True)
    for _ in range(n):
        a, lam = rng.uniform(0.5, 2.0, 2)
        mat = BulkMaterial(rng.uniform(0.2, 3.0), rng.uniform(0.0, 50.0))
        eta = np.zeros((3, 3))
        for idx in ((0, 0), (1, 1), (1, 2), (2, 1), (2, 2)):
            eta[idx] = rng.normal()
        x = incremental_bulk_coeffs(a, lam, mat).chi(eta)
        y = chi_from_moduli(a, lam, mat, eta)
        err = np.abs(x - y).max() / max(np.abs(y).max(), 1e-300)
        res.worst = max(res.worst, err)
        if err > 1e-12:
            res.failures.append(f"a={a:.4g} lambda={lam:.4g}: {err:.2e}")
    res.passed = not res.failures
    return res


def suite_chis_two_path(n: int = 20, seed: int = 3) -> SuiteResult:
    rng = np.random.default_rng(seed)
    res = SuiteResult("chis_two_path", True)
    for _ in range(n):
        a, lam, radius = rng.uniform(0.5, 2.0, 3)
        model = SurfaceModel.helfrich(rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(-2, 2))
        x = incremental_surface_coeffs(model, a, lam, radius).components
        y = helfrich_chis_table(model, a, lam, radius).components
        err = np.abs(x - y).max() / max(1.0, np.abs(y).max())
        res.worst = max(res.worst, err)
        if err > 1e-12:
            res.failures.append(f"a={a:.4g} lambda={lam:.4g} A={radius:.4g}: {err:.2e}")
    res.passed = not res.failures
    return res


def suite_omega_two_path(seed: int = 4) -> SuiteResult:
    rng = np.random.default_rng(seed)
    res = SuiteResult("omega_two_path", True)
    for _ in range(6):
        mat = BulkMaterial(1.0, rng.uniform(0.5, 20.0))
        surf = SurfaceModel.helfrich(rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(-2, 2))
        lam = rng.uniform(0.6, 1.8)
        k = rng.uniform(0.1, 3.0)
        try:
            base = BaseState.solve(lam, mat, surf)
        except Exception as exc:
            res.failures.append(f"base state at lambda={lam:.4g}: {exc}")
            continue
        x = disp.boundary_matrix(k, base, "generic")
        y = disp.boundary_matrix(k, base, "helfrich")
        err = np.abs(x - y).max() / np.abs(y).max()
        res.worst = max(res.worst, err)
        if err > 1e-11:
            res.failures.append(f"boundary matrix k={k:.4g} lambda={lam:.4g}: {err:.2e}")
    mat = BulkMaterial(1.0, disp.INCOMPRESSIBLE_PROXY)
    for g, b, h in ((6.5, 0.0, 0.0), (0.5, 2.0, -1.45)):
        surf = SurfaceModel.helfrich(g, b, h)
        for k, lam in ((0.3, 0.8), (1.0, 1.3), (2.0, 1.7)):
            om = disp.dispersion_problem(k, BaseState.solve(lam, mat, surf)).omega
            ref = disp.dispersion_det_incompressible_reduced(k, lam, g, b, h) * disp.incompressible_scale(k, lam)
            err = abs(om - ref) / abs(ref)
            res.details[f"incompressible g={g} b={b} k={k} lambda={lam}"] = err
            if err > 1e-5:
                res.failures.append(f"D=1e8 vs closed form at k={k}, lambda={lam}: {err:.2e}")
    res.passed = not res.failures
    return res


def suite_q2_probe() -> SuiteResult:
    res = SuiteResult("q2_probe", True)
    verdicts = set()
    for d, lam in ((1.0, 1.3), (4.0, 0.8), (49.0, 2.0)):
        mat = BulkMaterial(1.0, d)
        a = solve_azimuthal_stretch(lam, mat, SurfaceModel.tension(0.0))
        probe = disp.q2_probe(a, lam, mat)
        res.details[f"D={d} lambda={lam}"] = probe
        verdicts.add(probe["verdict"])
        if abs(probe["residual_if_q2sq"]) > 1e-12:
            res.failures.append(f"K1/K2 is not a root of the characteristic polynomial at D={d}")
    res.details["verdict"] = "printed ratio is q2^2" if verdicts == {"q2^2"} else "inconclusive"
    res.passed = not res.failures and verdicts == {"q2^2"}
    return res


K0_CASES = (
    (BulkMaterial(1.0, 10.0), SurfaceModel.helfrich(6.5, 0.0, 0.0), (0.5, 1.5)),
    (BulkMaterial(1.0, 49.0), SurfaceModel.stretch(10.0, 5.0), (1.5, 4.0)),
    (BulkMaterial(1.0, 4.0), SurfaceModel.helfrich(4.0, 2.0, -2.0), (0.5, 1.5)),
    (BulkMaterial(1.0, 2.0), SurfaceModel.tension(5.0), (0.5, 1.5)),
    (BulkMaterial(1.0, 1e3), SurfaceModel.helfrich(7.0, 0.5, -1.0), (0.5, 1.5)),
)


def k0_consistency(mat: BulkMaterial, surf: SurfaceModel, bracket: tuple, k: float = 1e-4) -> tuple:
    """(root of Omega at small k, root of dF_z/dlambda near it)."""
    point = disp.critical_stretch(k, mat, surf, 1.0, bracket)
    lam = point.lambda_crit
    return lam, limiting_point(mat, surf, (0.97 * lam, 1.03 * lam))


def suite_k0_consistency(cases=K0_CASES[:2]) -> SuiteResult:
    res = SuiteResult("k0_consistency", True)
    for mat, surf, bracket in cases:
        label = f"{surf.kind.value} D={mat.d_modulus:g}"
        try:
            lam_omega, lam_force = k0_consistency(mat, surf, bracket)
        except Exception as exc:
            res.failures.append(f"{label}: {exc}")
            continue
        err = abs(lam_omega - lam_force)
        res.details[label] = {"omega_root": lam_omega, "force_root": lam_force}
        res.worst = max(res.worst, err)
        if err > 1e-4:
            res.failures.append(f"{label}: |difference| = {err:.2e}")
    res.passed = not res.failures
    return res


def suite_base_state() -> SuiteResult:
    res = SuiteResult("base_state", True)
    a = solve_azimuthal_stretch(1.0, BulkMaterial(1.0, 0.0), SurfaceModel.tension(1.0))
    err1 = abs(a - (math.sqrt(5.0) - 1.0) / 2.0)
    a2 = solve_azimuthal_stretch(1.5, BulkMaterial(1.0, 1e8), SurfaceModel.tension(0.0))
    err2 = abs(a2 - 1.5 ** -0.5)
    res.details = {"quadratic_root_error": err1, "incompressible_error": err2}
    if err1 > 1e-12:
        res.failures.append(f"quadratic root off by {err1:.2e}")
    if err2 > 1e-4:
        res.failures.append(f"incompressible limit off by {err2:.2e}")
    res.worst = max(err1, err2)
    res.passed = not res.failures
    return res


def run_all(moduli_hook: Optional[Callable] = None) -> list:
    return [
        suite_fd_moduli(moduli_hook=moduli_hook),
        suite_invariant_moduli(),
        suite_bulk_two_path(),
        suite_chis_two_path(),
        suite_omega_two_path(),
        suite_q2_probe(),
        suite_k0_consistency(),
        suite_base_state(),
    ]
