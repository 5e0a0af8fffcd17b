"""Base state of a coated cylinder: how the radius responds to axial stretch.

Run: python3 demos/01_base_state.py
"""

import numpy as np

from curvelast import BulkMaterial, SurfaceModel, solve_azimuthal_stretch, axial_force, limiting_point

# Units: shear modulus mu = 1, undeformed radius A = 1.
bulk = BulkMaterial.from_poisson(1.0, 0.4)
print(f"bulk: mu = {bulk.mu}, D = {bulk.d_modulus:.3f}, nu = {bulk.nu:.2f}")

coatings = {
    "bare": SurfaceModel.tension(0.0),
    "tension 2": SurfaceModel.tension(2.0),
    "bending": SurfaceModel.helfrich(2.0, 1.0, -1.0),
}

# Surface tension squeezes the cylinder: at fixed stretch the radius a*A shrinks.
print("\nlambda    " + "".join(f"{name:>14}" for name in coatings))
for lam in np.linspace(0.6, 2.0, 8):
    row = [solve_azimuthal_stretch(lam, bulk, s) for s in coatings.values()]
    print(f"{lam:6.3f}    " + "".join(f"{a:14.6f}" for a in row))

# Incompressible limit: a -> lambda^(-1/2) whatever the coating.
stiff = BulkMaterial(1.0, 1e8)
for lam in (0.5, 1.0, 2.0):
    a = solve_azimuthal_stretch(lam, stiff, coatings["bending"])
    print(f"D = 1e8, lambda = {lam}: a = {a:.8f}, lambda^-1/2 = {lam ** -0.5:.8f}")

# Axial force along the branch. A strong enough coating makes F_z non-monotone;
# the fold dF_z/dlambda = 0 is the long-wave (k -> 0) instability.
surf = SurfaceModel.helfrich(6.5, 0.0)
mat = BulkMaterial(1.0, 10.0)
print("\nlambda      a          F_z")
for lam in np.linspace(0.5, 0.8, 7):
    a = solve_azimuthal_stretch(lam, mat, surf)
    print(f"{lam:6.3f}  {a:9.6f}  {axial_force(lam, a, mat, surf):10.6f}")
print(f"fold of F_z(lambda) at lambda = {limiting_point(mat, surf, (0.55, 0.75)):.6f}")
