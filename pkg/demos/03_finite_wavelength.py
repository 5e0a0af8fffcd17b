"""Coatings that resist stretching or bending select a finite wavelength.

With a purely tensile surface the most unstable mode is the longest one. Add
stretch resistance (alpha_s) or bending stiffness with spontaneous curvature
(beta_s, H0) and lambda_crit(k) develops an interior maximum at k* > 0.

Run: python3 demos/03_finite_wavelength.py
"""

import numpy as np
from scipy.optimize import minimize_scalar

from curvelast import BulkMaterial, NoBracket, SurfaceModel, bifurcation_curve, critical_stretch


def show(title, points):
    print(f"\n{title}")
    for p in points:
        value = f"{p.lambda_crit:.5f}" if p.status == "ok" else "stable (no root)"
        print(f"  k = {p.k:6.3f}   lambda_crit = {value}")


def peak(mat, surf, bracket, bounds, incompressible=False):
    def neg(k):
        try:
            return -critical_stretch(k, mat, surf, lam_bracket=bracket, incompressible=incompressible).lambda_crit
        except NoBracket:
            return 0.0
    res = minimize_scalar(neg, bounds=bounds, method="bounded", options={"xatol": 1e-4})
    return res.x, -res.fun


# Stretch resistance at nu = 0.49.
mat = BulkMaterial.from_poisson(1.0, 0.49)
for gamma, alpha in ((10.0, 5.0), (10.0, 10.0)):
    surf = SurfaceModel.stretch(gamma, alpha)
    show(f"stretch model gamma = {gamma}, alpha_s = {alpha}, nu = 0.49",
         bifurcation_curve(np.linspace(0.05, 1.0, 9), mat, surf, lam_bracket=(1.05, 6.0)))
    k_star, lam_star = peak(mat, surf, (1.05, 6.0), (0.05, 1.0))
    print(f"  maximum lambda_crit = {lam_star:.5f} at k* = {k_star:.4f}")

# Bending with negative spontaneous curvature at nu = 0.4.
mat = BulkMaterial.from_poisson(1.0, 0.4)
surf = SurfaceModel.helfrich(4.0, 2.0, -2.0)
show("bending model gamma = 4, beta_s = 2, H0 = -2, nu = 0.4",
     bifurcation_curve(np.linspace(0.2, 2.4, 9), mat, surf, lam_bracket=(0.05, 6.0)))
k_star, lam_star = peak(mat, surf, (0.05, 6.0), (0.5, 3.0))
print(f"  maximum lambda_crit = {lam_star:.5f} at k* = {k_star:.4f}")

# Incompressible bending model with H0 = -1.45: instability under tension (lambda > 1).
surf = SurfaceModel.helfrich(4.0, 6.0, -1.45)
show("incompressible gamma = 4, beta_s = 6, H0 = -1.45",
     bifurcation_curve(np.linspace(0.1, 1.6, 9), None, surf, lam_bracket=(1.0001, 4.0), incompressible=True))
k_star, lam_star = peak(None, surf, (1.0001, 4.0), (0.1, 1.5), incompressible=True)
print(f"  maximum lambda_crit = {lam_star:.5f} at k* = {k_star:.4f}, wavelength 2 pi / k* = {2 * np.pi / k_star:.3f} A")
