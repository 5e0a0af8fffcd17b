"""Surface tension alone: the elastic analogue of the Plateau-Rayleigh instability.

Run: python3 demos/02_surface_tension.py
"""

import numpy as np

from curvelast import BulkMaterial, SurfaceModel, bifurcation_curve, critical_stretch, dispersion_det
from curvelast.dispersion import dispersion_det_incompressible_reduced, incompressible_scale

# Long-wave threshold for an incompressible cylinder: gamma* = 2 (lambda^3 + 2) / lambda^(3/2).
for lam in (0.8, 1.0, 1.5, 2.0):
    print(f"lambda = {lam}: gamma* = {2 * (lam ** 3 + 2) / lam ** 1.5:.4f}")

# Sign map of Omega for gamma = 6.5. Negative entries ('-') lie inside the unstable region.
gamma = 6.5
ks = np.linspace(0.05, 0.6, 12)
lams = np.linspace(0.7, 2.2, 16)
print(f"\nsign of Omega, incompressible, gamma = {gamma} (rows: lambda, columns: k)")
print("        " + "".join(f"{k:5.2f}" for k in ks))
for lam in lams:
    signs = ["  -  " if dispersion_det_incompressible_reduced(k, lam, gamma, 0.0) < 0 else "  +  " for k in ks]
    print(f"{lam:6.3f}  " + "".join(signs))

# Upper boundary lambda_crit(k) on the closed form and at D = 1e8.
surf = SurfaceModel.helfrich(gamma, 0.0)
grid = np.linspace(0.06, 0.33, 6)
closed = bifurcation_curve(grid, None, surf, lam_bracket=(0.5, 1.5), incompressible=True)
proxy = bifurcation_curve(grid, BulkMaterial(1.0, 1e8), surf, lam_bracket=(0.5, 1.5))
print("\n   k     closed form     D = 1e8")
for p, q in zip(closed, proxy):
    print(f"{p.k:5.3f}  {p.lambda_crit:12.8f}  {q.lambda_crit:12.8f}")

# The compressible determinant approaches a known multiple of the closed form.
k, lam = 0.3, 0.9
om = dispersion_det(k, lam, BulkMaterial(1.0, 1e8), surf)
ref = dispersion_det_incompressible_reduced(k, lam, gamma, 0.0) * incompressible_scale(k, lam)
print(f"\nOmega(D = 1e8) = {om:.10e}, scaled closed form = {ref:.10e}")

# At long wavelength Omega < 0 on a window of stretches. Both edges move with
# compressibility; seeds pick the root nearest each end of the bracket.
print("\nk = 0.05 unstable window versus Poisson ratio")
for nu in (0.3, 0.4, 0.45, 0.49):
    mat = BulkMaterial.from_poisson(1.0, nu)
    lo = critical_stretch(0.05, mat, surf, lam_bracket=(0.2, 4.0), seed=0.2).lambda_crit
    hi = critical_stretch(0.05, mat, surf, lam_bracket=(0.2, 4.0), seed=4.0).lambda_crit
    print(f"nu = {nu:4.2f}: unstable for {lo:.5f} < lambda < {hi:.5f}")
