"""Checking surface tangent moduli three ways.

The aligned (principal-stretch) formulas, the invariant formulas and a
central-difference oracle must agree. A custom energy written in the six
surface invariants goes through the same checks.

Run: python3 demos/04_moduli_checks.py
"""

import numpy as np

from curvelast.surface_material import (PolynomialInvariantEnergy, SurfaceModel, SurfacePrincipalState,
                                        fd_surface_moduli_oracle, invariant_derivatives, principal_invariants,
                                        surface_moduli_aligned, surface_moduli_invariant)
from curvelast.verification import compare_moduli

state = SurfacePrincipalState(1.15, 0.85, 0.6, -0.2)
print(f"state: stretches ({state.lam1}, {state.lam2}), curvatures ({state.kap1}, {state.kap2})")

for model in (SurfaceModel.tension(1.0), SurfaceModel.stretch(1.0, 2.0), SurfaceModel.helfrich(1.0, 0.8, -0.5)):
    aligned = surface_moduli_aligned(model, state)
    fd = fd_surface_moduli_oracle(model, state)
    d, dd = invariant_derivatives(model, principal_invariants(state.x))
    inv = surface_moduli_invariant(d, dd, state)
    w_fd, _ = compare_moduli(aligned, fd, 1e-6, 1e-9)
    w_inv, _ = compare_moduli(inv, aligned, 1e-10, 1e-12)
    print(f"{model.kind.value:9s} aligned vs FD {w_fd:.1e}   invariant vs aligned {w_inv:.1e}")

np.set_printoptions(precision=4, suppress=True)
helfrich = surface_moduli_aligned(SurfaceModel.helfrich(1.0, 0.8, -0.5), state)
print("\nHelfrich A_s[a, b, a, b] block (in-plane):")
print(helfrich.A_s.components[:2, :2, :2, :2].reshape(4, 4))

# A random quadratic energy in the invariants, including the twist invariant I6.
rng = np.random.default_rng(3)
c2 = rng.normal(size=(6, 6))
energy = PolynomialInvariantEnergy(rng.normal(size=6), c2 + c2.T)
d, dd = energy.invariant(principal_invariants(state.x))
worst, bad = compare_moduli(surface_moduli_invariant(d, dd, state),
                            fd_surface_moduli_oracle(energy.as_model(), state), 1e-6, 1e-8)
print(f"\npolynomial energy: invariant vs FD {worst:.1e}, mismatches: {bad or 'none'}")

# A deliberately broken entry is reported by name.
broken = surface_moduli_aligned(SurfaceModel.helfrich(1.0, 0.8, -0.5), state)
broken.D_s.components[1, 1, 1, 1] *= 1.01
_, bad = compare_moduli(broken, fd_surface_moduli_oracle(SurfaceModel.helfrich(1.0, 0.8, -0.5), state), 1e-6, 1e-9)
print(f"corrupted D_s: flagged {bad}")
